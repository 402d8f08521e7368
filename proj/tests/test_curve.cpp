#include "graded/curve.hpp"
#include "graded/errors.hpp"
#include "graded/frames.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace graded;
using testutil::vec;

namespace {

Curve engel_line() { return polynomial_curve("engel_line", {Polynomial({0}), Polynomial({0, 1}), Polynomial({0}), Polynomial({0})}, 0, 1); }

Curve vertical_line(double b) {
    return polynomial_curve("vertical", {Polynomial({0}), Polynomial({0}), Polynomial({0, 1})}, 0, b);
}

// (0.3 t, 0.2 t^2, t): vertical coefficient 1 - 0.03 t^2, horizontal (0.3, 0.4 t).
Curve mixed_curve() {
    return polynomial_curve("mixed", {Polynomial({0, 0.3}), Polynomial({0, 0, 0.2}), Polynomial({0, 1})}, 0, 1);
}

bool lower_semicontinuous(const DegreeProfile& p) {
    const int n = static_cast<int>(p.pointwise_degree.size());
    for (int i = 0; i < n; ++i) {
        const int d0 = p.pointwise_degree[i];
        bool ok = false;
        // some neighbouring node keeps degree >= d0
        if (i > 0 && p.pointwise_degree[i - 1] >= d0) ok = true;
        if (i + 1 < n && p.pointwise_degree[i + 1] >= d0) ok = true;
        if (!ok) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("Engel horizontal line has degree one everywhere") {
    const DegreeProfile p = degree_profile(engel_line(), frames::engel(), 101);
    CHECK(p.curve_degree == 1);
    CHECK(p.singular_nodes.empty());
    for (int d : p.pointwise_degree) CHECK(d == 1);
}

TEST_CASE("the R^5 line (0, t, 0, 0, 0) has degree two") {
    const Curve c = polynomial_curve("r5", {Polynomial({0}), Polynomial({0, 1}), Polynomial({0}), Polynomial({0}), Polynomial({0})}, 0, 1);
    const DegreeProfile p = degree_profile(c, frames::r5_degree2(), 101);
    CHECK(p.curve_degree == 2);
    for (int d : p.pointwise_degree) CHECK(d == 2);
}

TEST_CASE("(t, t^2, t^3) in H^1 drops to degree one only where its vertical coefficient 5t^2/2 vanishes") {
    const Curve c = polynomial_curve("cubic", {Polynomial({0, 1}), Polynomial({0, 0, 1}), Polynomial({0, 0, 0, 1})}, -1, 1);
    const AdaptedFrame h = frames::heisenberg(1);
    const DegreeProfile p = degree_profile(c, h, 101);
    CHECK(p.curve_degree == 2);
    REQUIRE(p.singular_nodes.size() == 1u);
    CHECK(p.singular_nodes[0] == 50);
    const Vec coeff = h.expansion(c.position(0.4), c.velocity(0.4));
    CHECK(coeff(2) == doctest::Approx(2.5 * 0.16));
    CHECK(lower_semicontinuous(p));
}

TEST_CASE("degree profiles are lower semicontinuous on every test curve at two resolutions") {
    const Curve cubic = polynomial_curve("cubic", {Polynomial({0, 1}), Polynomial({0, 0, 1}), Polynomial({0, 0, 0, 1})}, -1, 1);
    for (int n : {101, 1001}) {
        CHECK(lower_semicontinuous(degree_profile(cubic, frames::heisenberg(1), n)));
        CHECK(lower_semicontinuous(degree_profile(mixed_curve(), frames::heisenberg(1), n)));
        CHECK(lower_semicontinuous(degree_profile(engel_line(), frames::engel(), n)));
    }
}

TEST_CASE("zero velocity is rejected with its parameter") {
    const Curve c = polynomial_curve("stall", {Polynomial({0, 0, 1}), Polynomial({0}), Polynomial({0})}, -1, 1);
    CHECK_THROWS_AS(degree_profile(c, frames::heisenberg(1), 101), ImmersionError);
}

TEST_CASE("length densities") {
    const AdaptedFrame h = frames::heisenberg(1);
    const Curve circle("planar circle", 0, 6.3, [](double t) { return vec({std::cos(t), std::sin(t), 0}); },
                       [](double t) { return vec({-std::sin(t), std::cos(t), 0}); });
    CHECK(length_density(circle, h, 1, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    const Vec coeff = h.expansion(circle.position(0.0), circle.velocity(0.0));
    CHECK(coeff(2) == doctest::Approx(-0.5));
    const Curve lift = testutil::heisenberg_circle(0, 3);
    for (double t : {0.0, 0.7, 2.9}) CHECK(length_density(lift, h, 1, t) == doctest::Approx(1.0));
    for (double t : {0.0, 0.5, 2.0}) CHECK(length_density(vertical_line(2), h, 2, t) == doctest::Approx(1.0));
    CHECK(length_density(lift, h, 3, 0.2) == 0.0);
}

TEST_CASE("L_d of the vertical segment and of a degenerate interval") {
    const AdaptedFrame h = frames::heisenberg(1);
    CHECK(length_Ld(vertical_line(2), h, 2, 0, 2, 1001) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(length_Ld(vertical_line(2), h, 2, 0.5, 0.5, 1001) == 0.0);
    CHECK_THROWS_AS(length_Ld(vertical_line(2), h, 2, 0, 3, 1001), InputError);
    CHECK_THROWS_AS(length_Ld(vertical_line(2), h, 2, 0, 2, 1000), InputError);
}

TEST_CASE("blow-up lengths") {
    const AdaptedFrame h = frames::heisenberg(1);
    const Curve mixed = mixed_curve();
    // r = 1 is the ordinary length.
    const Grid g(0, 1, 1001);
    std::vector<double> speed;
    for (double t : g.nodes()) speed.push_back(h.expansion(mixed.position(t), mixed.velocity(t)).norm());
    CHECK(riemannian_length_gr(mixed, h, 1.0, 0, 1, 1001) == doctest::Approx(simpson(speed, g.step())));
    // Single-layer velocity: the weight cancels the prefactor.
    CHECK(std::sqrt(0.01) * riemannian_length_gr(vertical_line(1), h, 0.01, 0, 1, 1001) == doctest::Approx(1.0).epsilon(1e-14));
    const double l2 = length_Ld(mixed, h, 2, 0, 1, 1001);
    CHECK(l2 == doctest::Approx(0.99).epsilon(1e-12));
    double prev = INFINITY;
    for (double r : {1e-2, 1e-4, 1e-6}) {
        const double err = std::abs(std::sqrt(r) * riemannian_length_gr(mixed, h, r, 0, 1, 1001) - l2);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
    CHECK_THROWS_AS(riemannian_length_gr(mixed, h, 0.0, 0, 1, 1001), InputError);
}

TEST_CASE("L_d is invariant under increasing reparameterization") {
    const AdaptedFrame h = frames::heisenberg(1);
    const Curve mixed = mixed_curve();
    // phi(u) = u^3/3 + u maps [0, u1] onto [0, 1].
    double u1 = 0.8;
    for (int i = 0; i < 60; ++i) u1 -= (u1 * u1 * u1 / 3 + u1 - 1) / (u1 * u1 + 1);
    const Curve re = reparameterize(mixed, [](double u) { return u * u * u / 3 + u; }, [](double u) { return u * u + 1; }, 0, u1);
    const double a = length_Ld(mixed, h, 2, 0, 1, 1001), b = length_Ld(re, h, 2, 0, u1, 1001);
    CHECK(std::abs(a - b) / a < 1e-8);
}

TEST_CASE("theta_d is nonnegative and positive off the singular nodes") {
    const Curve c = polynomial_curve("cubic", {Polynomial({0, 1}), Polynomial({0, 0, 1}), Polynomial({0, 0, 0, 1})}, -1, 1);
    const AdaptedFrame h = frames::heisenberg(1);
    const DegreeProfile p = degree_profile(c, h, 101);
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        const double th = length_density(c, h, 2, p.grid[i]);
        CHECK(th >= 0.0);
        const bool singular = std::find(p.singular_nodes.begin(), p.singular_nodes.end(), static_cast<int>(i)) != p.singular_nodes.end();
        CHECK((th > 0.0) == !singular);
    }
}

TEST_CASE("arc-length reparameterization normalizes theta_d") {
    const AdaptedFrame h = frames::heisenberg(1);
    const Curve re = arc_length_reparameterize(mixed_curve(), h, 2);
    CHECK(re.b() == doctest::Approx(0.99).epsilon(1e-12));
    for (double u : {0.0, 0.3, 0.77, re.b()}) CHECK(std::abs(length_density(re, h, 2, u) - 1.0) < 1e-12);
    CHECK((re.position(re.b()) - mixed_curve().position(1.0)).norm() < 1e-10);
}

TEST_CASE("sampled curves interpolate their rows") {
    std::vector<double> t;
    std::vector<Vec> pts;
    for (int i = 0; i <= 40; ++i) {
        const double s = i / 40.0;
        t.push_back(s);
        pts.push_back(vec({std::cos(s), std::sin(s), s * s}));
    }
    const Curve c = sampled_curve("samples", t, pts);
    CHECK((c.position(0.5125) - vec({std::cos(0.5125), std::sin(0.5125), 0.5125 * 0.5125})).norm() < 1e-7);
    CHECK((c.velocity(0.5) - vec({-std::sin(0.5), std::cos(0.5), 1.0})).norm() < 1e-6);
}

TEST_CASE("finite-difference velocities agree with analytic ones") {
    const Curve m = mixed_curve();
    for (double t : {0.0, 0.5, 1.0}) CHECK((m.finite_difference_velocity(t) - m.velocity(t)).norm() < 1e-8);
}
