#include "graded/admissibility.hpp"
#include "graded/errors.hpp"
#include "graded/frames.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace graded;
using testutil::vec;

namespace {

Curve line(const std::string& label, int dim, int axis, double a = 0, double b = 1) {
    std::vector<Polynomial> comps(dim, Polynomial({0}));
    comps[axis] = Polynomial({0, 1});
    return polynomial_curve(label, comps, a, b);
}

double bump(double t, double a, double b) {
    if (t <= a || t >= b) return 0.0;
    const double s = (t - a) / (b - a);
    return std::pow(std::sin(M_PI * s), 4);
}

ControlField bump_control(int k, std::mt19937_64& rng, double a, double b) {
    std::uniform_real_distribution<double> u(-1, 1), pos(0, 1);
    Vec amp(k), freq(k);
    for (int i = 0; i < k; ++i) {
        amp(i) = u(rng);
        freq(i) = 3 * u(rng);
    }
    const double lo = a + 0.3 * (b - a) * pos(rng), hi = b - 0.3 * (b - a) * pos(rng);
    return {[=](double t) {
                Vec g(k);
                for (int i = 0; i < k; ++i) g(i) = amp(i) * bump(t, lo, hi) * std::cos(freq(i) * t);
                return g;
            },
            true};
}

}  // namespace

TEST_CASE("Engel line along X_2 has A = [[-1, 0], [0, 0]] and B = 0") {
    const AdmissibilitySystem s = build_system(line("engel", 4, 1), frames::engel(), 1, 101);
    CHECK(s.k() == 2);
    CHECK(s.vertical() == 2);
    Mat a(2, 2);
    a << -1, 0, 0, 0;
    for (int i = 0; i < s.grid().size(); i += 10) {
        CHECK((s.A(i) - a).norm() < 1e-12);
        CHECK(s.B(i).norm() < 1e-12);
        CHECK((s.D(i) - Mat::Identity(2, 2)).norm() < 1e-12);
    }
}

TEST_CASE("Heisenberg horizontal circle: A = (-h_2, h_1) in both frames up to the contact factor") {
    const Curve c = testutil::heisenberg_circle(0, 2);
    const AdmissibilitySystem s = build_system(c, frames::heisenberg(1), 1, 101);
    for (int i = 0; i < s.grid().size(); i += 10) {
        const double t = s.grid().node(i);
        CHECK(std::abs(s.A(i)(0, 0) - (-std::cos(t))) < 1e-12);
        CHECK(std::abs(s.A(i)(0, 1) - (-std::sin(t))) < 1e-12);
        CHECK(std::abs(s.B(i)(0, 0)) < 1e-12);
    }
    // Contact-frame horizontal lift: t' = y x' - x y' = -1.
    const Curve cc("contact circle", 0, 2, [](double t) { return vec({std::cos(t), std::sin(t), -t}); },
                   [](double t) { return vec({-std::sin(t), std::cos(t), -1}); });
    const AdmissibilitySystem sc = build_system(cc, frames::heisenberg_contact(), 1, 101);
    for (int i = 0; i < sc.grid().size(); i += 10) {
        const double t = sc.grid().node(i);
        CHECK(std::abs(sc.A(i)(0, 0) - 2 * std::cos(t)) < 1e-12);
        CHECK(std::abs(sc.A(i)(0, 1) - 2 * std::sin(t)) < 1e-12);
    }
}

TEST_CASE("Euclidean splits have vanishing A and B") {
    const AdmissibilitySystem s = build_system(line("e", 4, 0), frames::euclidean_split(4, 2), 1, 51);
    for (int i = 0; i < s.grid().size(); ++i) {
        CHECK(s.A(i).norm() == 0.0);
        CHECK(s.B(i).norm() == 0.0);
    }
}

TEST_CASE("fundamental matrix matches closed forms") {
    const Grid g(0, 1, 1001);
    SUBCASE("constant diagonal") {
        const auto d = fundamental_matrix(g, [](double) { Mat b(2, 2); b << 0.5, 0, 0, -1; return b; });
        CHECK(std::abs(d.back()(0, 0) - std::exp(0.5)) < 1e-12);
        CHECK(std::abs(d.back()(1, 1) - std::exp(-1.0)) < 1e-12);
    }
    SUBCASE("time-dependent diagonal") {
        const auto d = fundamental_matrix(g, [](double t) { Mat b(2, 2); b << t, 0, 0, -t; return b; });
        CHECK(std::abs(d.back()(0, 0) - std::exp(0.5)) < 1e-12);
        CHECK(std::abs(d.back()(1, 1) - std::exp(-0.5)) < 1e-12);
    }
    SUBCASE("nilpotent") {
        const auto d = fundamental_matrix(g, [](double) { Mat b(2, 2); b << 0, 1, 0, 0; return b; });
        Mat expect(2, 2);
        expect << 1, 1, 0, 1;
        CHECK((d.back() - expect).norm() < 1e-13);
    }
}

TEST_CASE("determinant identity for random polynomial B") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    const Grid g(0, 1, 1001);
    for (int m = 1; m <= 4; ++m) {
        std::vector<Mat> c(3, Mat(m, m));
        for (auto& ci : c)
            for (int i = 0; i < m * m; ++i) ci.data()[i] = u(rng);
        auto b = [c](double t) { return Mat(c[0] + t * c[1] + t * t * c[2]); };
        const AdmissibilitySystem s = AdmissibilitySystem::from_samplers(g, 1, m, [m](double) { return Mat::Zero(m, 1); }, b);
        CHECK(s.determinant_identity_error() < 1e-6);
    }
}

TEST_CASE("Engel holonomy is (integral of g_1, 0)") {
    const AdmissibilitySystem s = build_system(line("engel", 4, 1), frames::engel(), 1, 1001);
    const ControlField g{[](double t) { return vec({bump(t, 0, 1), bump(t, 0, 1) * t}); }, true};
    const HolonomyResult h = holonomy(s, g);
    CHECK(!h.support_warning);
    CHECK(std::abs(h.value(0) - 0.375) < 1e-10);  // int sin^4(pi t) dt = 3/8
    CHECK(std::abs(h.value(1)) < 1e-14);
}

TEST_CASE("holonomy formula agrees with the ODE endpoint") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1, 1);
    const Grid g(0, 1, 1001);
    for (int trial = 0; trial < 10; ++trial) {
        const int k = 2, m = 1 + trial % 3;
        Mat a0(m, k), a1(m, k), b0(m, m), b1(m, m);
        for (Mat* mm : {&a0, &a1, &b0, &b1})
            for (int i = 0; i < mm->size(); ++i) mm->data()[i] = u(rng);
        const auto s = AdmissibilitySystem::from_samplers(
            g, k, m, [=](double t) { return Mat(a0 + std::sin(t) * a1); }, [=](double t) { return Mat(b0 + t * b1); });
        const ControlField ctrl = bump_control(k, rng, 0, 1);
        const Vec via_formula = holonomy(s, ctrl).value;
        const Vec via_ode = solve_admissibility(s, ctrl, Vec::Zero(m)).f.back();
        CHECK((via_formula - via_ode).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("admissibility residual vanishes on solutions and not on perturbations") {
    const AdmissibilitySystem s = build_system(testutil::heisenberg_circle(0, 2), frames::heisenberg(1), 1, 1001);
    const ControlField g{[](double t) { return vec({std::sin(3 * t), t * t}); }, false};
    const VerticalField f = solve_admissibility(s, g, vec({0.25}));
    CHECK(max_norm(admissibility_residual(s, g, f)) < 1e-8);
    VerticalField bad = f;
    for (std::size_t i = 0; i < bad.f.size(); ++i) bad.f[i](0) += 0.1 * bad.t[i];
    CHECK(max_norm(admissibility_residual(s, g, bad)) > 0.05);
}

TEST_CASE("holonomy is linear in the control") {
    const AdmissibilitySystem s = build_system(testutil::heisenberg_circle(0, 2), frames::heisenberg(1), 1, 1001);
    std::mt19937_64 rng(3);
    const ControlField g1 = bump_control(2, rng, 0, 2), g2 = bump_control(2, rng, 0, 2);
    const ControlField sum{[&](double t) { return Vec(2.0 * g1(t) - 3.0 * g2(t)); }, true};
    const Vec lhs = holonomy(s, sum).value, rhs = 2.0 * holonomy(s, g1).value - 3.0 * holonomy(s, g2).value;
    CHECK((lhs - rhs).norm() < 1e-13);
}

TEST_CASE("non-compact controls raise a support warning") {
    const AdmissibilitySystem s = build_system(testutil::heisenberg_circle(0, 2), frames::heisenberg(1), 1, 101);
    const ControlField g{[](double) { return vec({1.0, 0.0}); }, true};
    CHECK(holonomy(s, g).support_warning);
    const ControlField flagged{[](double t) { return vec({bump(t, 0, 2), 0.0}); }, false};
    CHECK(holonomy(s, flagged).support_warning);
}

TEST_CASE("curves of too high degree are rejected") {
    CHECK_THROWS_AS(build_system(line("vertical", 3, 2), frames::heisenberg(1), 1, 101), InadmissibleCurveError);
    CHECK_THROWS_AS(build_system(line("h", 3, 0), frames::heisenberg(1), 1, 100), InputError);
    const AdmissibilitySystem top = build_system(line("vertical", 3, 2), frames::heisenberg(1), 2, 101);
    CHECK(top.vertical() == 0);
    CHECK(holonomy(top, {[](double) { return Vec::Zero(3); }, true}).value.size() == 0);
}

TEST_CASE("rotating the horizontal basis rotates A and leaves the holonomy image unchanged") {
    const double ang = 0.7, cs = std::cos(ang), sn = std::sin(ang);
    const AdaptedFrame h = frames::heisenberg(1);
    std::vector<VectorFieldSpec> f;
    f.push_back({"X'", [=](const Vec& p) { return Vec(cs * h.field(0).evaluate(p) + sn * h.field(1).evaluate(p)); }, {}});
    f.push_back({"Y'", [=](const Vec& p) { return Vec(-sn * h.field(0).evaluate(p) + cs * h.field(1).evaluate(p)); }, {}});
    f.push_back(h.field(2));
    const AdaptedFrame rotated("rotated", f, {2, 3});
    const Curve c = testutil::heisenberg_circle(0, 2);
    const AdmissibilitySystem s = build_system(c, h, 1, 201), sr = build_system(c, rotated, 1, 201);
    Mat q(2, 2);
    q << cs, sn, -sn, cs;  // new components = q * old components
    for (int i = 0; i < s.grid().size(); i += 20) {
        CHECK((sr.A(i) - s.A(i) * q.transpose()).norm() < 1e-6);
        CHECK(sr.B(i).norm() < 1e-6);
    }
    std::mt19937_64 rng(11);
    const ControlField g = bump_control(2, rng, 0, 2);
    const ControlField gr{[&](double t) { return Vec(q * g(t)); }, true};
    CHECK((holonomy(s, g).value - holonomy(sr, gr).value).norm() < 1e-6);
}

TEST_CASE("a position-dependent vertical basis produces B = -M' M^{-1}") {
    // R^3 with X_1 = d1, X_2 = d2, X_3 = e^{x_1} d3: along x_1 the vertical coefficient obeys B = c(1,3,3) = 1.
    std::vector<VectorFieldSpec> f;
    f.push_back(constant_field("X1", vec({1, 0, 0})));
    f.push_back(constant_field("X2", vec({0, 1, 0})));
    f.push_back({"X3", [](const Vec& p) { return vec({0, 0, std::exp(p(0))}); },
                 [](const Vec& p) { Mat j = Mat::Zero(3, 3); j(2, 0) = std::exp(p(0)); return j; }});
    const AdaptedFrame scaled("scaled", f, {2, 3});
    const AdmissibilitySystem s = build_system(line("x1", 3, 0), scaled, 1, 1001);
    for (int i = 0; i < s.grid().size(); i += 100) {
        CHECK(std::abs(s.B(i)(0, 0) - 1.0) < 1e-12);
        CHECK(std::abs(s.D(i)(0, 0) - std::exp(s.grid().node(i))) < 1e-11);
    }
}
