#include "graded/surface.hpp"

#include "graded/errors.hpp"
#include "graded/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace graded {

namespace {

using CoeffFn = std::function<Vec(const Vec&)>;

// Ambient field with the given (X, Y, T) components; Jacobian by finite differences.
VectorFieldSpec ambient_field(const std::string& label, const AdaptedFrame& heis, CoeffFn coeff) {
    VectorFieldSpec f;
    f.label = label;
    f.value = [heis, coeff](const Vec& p) { return Vec(heis.matrix_at(p) * coeff(p)); };
    return f;
}

VectorFieldSpec chart_field(const std::string& label, PointFn value, JacobianFn jac) {
    VectorFieldSpec f;
    f.label = label;
    f.value = std::move(value);
    f.jacobian = std::move(jac);
    return f;
}

double radius(const Vec& p) { return std::hypot(p(0), p(1)); }

// S = w(rho) d/dtheta is unit on the characteristic plane.
double char_w(double rho) { return 1.0 / (rho * std::sqrt(1.0 + 0.25 * rho * rho)); }
double char_dw(double rho) {
    const double q = 1.0 + 0.25 * rho * rho;
    return -(1.0 + 0.5 * rho * rho) / (rho * rho * std::pow(q, 1.5));
}

double pansu_f(double rho) { return 0.5 * (rho * std::sqrt(1.0 - rho * rho) + std::acos(rho)); }
double pansu_df(double rho) { return -rho * rho / std::sqrt(1.0 - rho * rho); }
double pansu_a(double rho) { return 1.0 / std::sqrt(1.0 - rho * rho); }
double pansu_b(double rho) { return rho * rho / (1.0 - rho * rho); }

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

}  // namespace

Surface vertical_plane() {
    const AdaptedFrame heis = frames::heisenberg(1);
    Surface s{"h1_vertical_plane", heis, {}, {}, {}, {}, {}, std::nullopt, {}};
    s.z = ambient_field("Z", heis, [](const Vec&) { return v3(1, 0, 0); });
    s.s = ambient_field("S", heis, [](const Vec&) { return v3(0, 0, 1); });
    s.embedding = [](const Vec& c) { return v3(c(0), 0.0, c(1)); };
    s.embedding_jacobian = [](const Vec&) {
        Mat j = Mat::Zero(3, 2);
        j(0, 0) = 1.0;
        j(2, 1) = 1.0;
        return j;
    };
    s.s_chart = constant_field("S", v2(0, 1));
    s.chart_frame = AdaptedFrame("h1_vertical_plane/chart", {constant_field("Z", v2(1, 0)), constant_field("S", v2(0, 1))},
                                 {1, 2});
    s.in_domain = [](const Vec&) { return true; };
    return s;
}

Surface characteristic_plane() {
    const AdaptedFrame heis = frames::heisenberg(1);
    Surface s{"h1_characteristic_plane", heis, {}, {}, {}, {}, {}, std::nullopt, {}};
    s.z = ambient_field("Z", heis, [](const Vec& p) {
        const double r = radius(p);
        return v3(p(0) / r, p(1) / r, 0.0);
    });
    s.s = ambient_field("S", heis, [](const Vec& p) {
        const double r = radius(p);
        return Vec(char_w(r) * v3(-p(1), p(0), -0.5 * r * r));
    });
    s.embedding = [](const Vec& c) { return v3(c(0) * std::cos(c(1)), c(0) * std::sin(c(1)), 0.0); };
    s.embedding_jacobian = [](const Vec& c) {
        Mat j = Mat::Zero(3, 2);
        j << std::cos(c(1)), -c(0) * std::sin(c(1)), std::sin(c(1)), c(0) * std::cos(c(1)), 0.0, 0.0;
        return j;
    };
    auto s_value = [](const Vec& c) { return v2(0.0, char_w(c(0))); };
    auto s_jac = [](const Vec& c) {
        Mat j = Mat::Zero(2, 2);
        j(1, 0) = char_dw(c(0));
        return j;
    };
    s.s_chart = chart_field("S", s_value, s_jac);
    s.chart_frame = AdaptedFrame("h1_characteristic_plane/chart",
                                 {constant_field("Z", v2(1, 0)), chart_field("S", s_value, s_jac)}, {1, 2});
    s.in_domain = [](const Vec& c) { return c(0) > 0.0; };
    return s;
}

Surface pansu_sphere() {
    const AdaptedFrame heis = frames::heisenberg(1);
    Surface s{"pansu_sphere", heis, {}, {}, {}, {}, {}, std::nullopt, {}};
    s.z = ambient_field("Z", heis, [](const Vec& p) {
        const double r = radius(p);
        return v3(-p(1) / r, p(0) / r, 0.0);
    });
    s.s = ambient_field("S", heis, [](const Vec& p) {
        const double r = radius(p), a = pansu_a(r);
        return v3(a * p(0) / r, a * p(1) / r, -pansu_b(r));
    });
    s.embedding = [](const Vec& c) { return v3(c(0) * std::cos(c(1)), c(0) * std::sin(c(1)), pansu_f(c(0))); };
    s.embedding_jacobian = [](const Vec& c) {
        Mat j(3, 2);
        j << std::cos(c(1)), -c(0) * std::sin(c(1)), std::sin(c(1)), c(0) * std::cos(c(1)), pansu_df(c(0)), 0.0;
        return j;
    };
    s.s_chart = chart_field("S", [](const Vec& c) { return v2(pansu_a(c(0)), 0.0); },
                            [](const Vec& c) {
                                Mat j = Mat::Zero(2, 2);
                                j(0, 0) = c(0) * std::pow(1.0 - c(0) * c(0), -1.5);
                                return j;
                            });
    s.in_domain = [](const Vec& c) { return c(0) > 0.0 && c(0) < 1.0; };
    return s;
}

double horizontal_normal_norm(const Surface& surface, const Vec& c) {
    const Vec e = surface.embedding(c);
    const Mat tangent = surface.ambient.matrix_at(e).colPivHouseholderQr().solve(surface.embedding_jacobian(c));
    const Eigen::Vector3d u = tangent.col(0), v = tangent.col(1);
    const Eigen::Vector3d n = u.cross(v);
    if (!(n.norm() > 0.0)) throw DomainError("surface '" + surface.name + "' chart is singular at the queried point");
    return n.normalized().head(2).norm();
}

namespace {

void require_regular_point(const Surface& surface, const Vec& c) {
    if (!surface.in_domain(c))
        throw DomainError("point lies outside the regular domain of surface '" + surface.name + "'");
    if (horizontal_normal_norm(surface, c) < 1e-9)
        throw DomainError("characteristic point of surface '" + surface.name + "' (|N_h| = 0)");
}

}  // namespace

SurfaceFrame surface_frame(const Surface& surface, const Vec& c) {
    require_regular_point(surface, c);
    const Vec e = surface.embedding(c);
    return {surface.ambient.expansion(e, surface.z.evaluate(e)), surface.ambient.expansion(e, surface.s.evaluate(e))};
}

double surface_bracket(const Surface& surface, const Vec& c) {
    require_regular_point(surface, c);
    const Vec e = surface.embedding(c);
    const Vec br = surface.ambient.expansion(e, lie_bracket(surface.z, surface.s, e));
    return br.dot(surface.ambient.expansion(e, surface.s.evaluate(e)));
}

Curve s_flow(const Surface& surface, const Vec& c, double span, int nodes) {
    const Grid grid(0.0, span, nodes);
    const auto states = integrate_ode([&](double, const Vec& y) { return surface.s_chart.evaluate(y); }, c, grid);
    std::vector<Vec> vel;
    for (const Vec& y : states) vel.push_back(surface.s_chart.evaluate(y));
    return hermite_curve(surface.name + "/S-flow", grid.nodes(), states, std::move(vel));
}

SurfaceGeodesic surface_geodesic_field(const Surface& surface, const Vec& c, double span, int nodes, double zero_tol) {
    SurfaceGeodesic out;
    out.bracket = surface_bracket(surface, c);
    out.every_curve_critical = std::abs(out.bracket) <= zero_tol;
    if (out.every_curve_critical) return out;
    Curve chart = s_flow(surface, c, span, nodes);
    const Surface surf = surface;
    out.ambient_curve = Curve(
        surface.name + "/geodesic", chart.a(), chart.b(), [surf, chart](double t) { return surf.embedding(chart.position(t)); },
        [surf, chart](double t) { return Vec(surf.embedding_jacobian(chart.position(t)) * chart.velocity(t)); });
    out.chart_curve = std::move(chart);
    return out;
}

double euclidean_length(const Surface& surface, const Curve& chart_curve, int quad_nodes) {
    const Grid grid(chart_curve.a(), chart_curve.b(), quad_nodes);
    std::vector<double> speed(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double t = grid.node(i);
        speed[i] = (surface.embedding_jacobian(chart_curve.position(t)) * chart_curve.velocity(t)).norm();
    }
    return simpson(speed, grid.step());
}

LimitResult characteristic_plane_limit(const std::vector<double>& rho_list, int nodes) {
    const Surface plane = characteristic_plane();
    LimitResult out;
    for (double rho : rho_list) {
        if (!(rho > 0.0)) throw InputError("characteristic-plane radii must be positive");
        const Curve loop = s_flow(plane, v2(rho, 0.0), 2.0 * std::numbers::pi, nodes);
        out.params.push_back(rho);
        out.values.push_back(euclidean_length(plane, loop, nodes));
    }
    out.limit = richardson(out.values, out.params, 2.0, 2.0);
    return out;
}

double pansu_half_length(double rho0, double guard, int nodes) {
    if (!(rho0 > 0.0 && rho0 < 1.0)) throw InputError("Pansu starting radius must lie in (0, 1)");
    // rho(u) = 1 - (1 - rho0)(1 - u)^2 removes the square-root endpoint behaviour of ds/drho.
    auto upto = [&](double delta) {
        const double ug = 1.0 - std::sqrt(delta / (1.0 - rho0));
        const Grid grid(0.0, ug, nodes);
        const auto s = integrate_ode(
            [rho0](double u, const Vec&) {
                const double rho = 1.0 - (1.0 - rho0) * (1.0 - u) * (1.0 - u);
                const double drho = 2.0 * (1.0 - rho0) * (1.0 - u);
                return Vec::Constant(1, std::sqrt(1.0 - rho * rho) * drho);  // ds/drho = 1 / rho-dot
            },
            Vec::Zero(1), grid);
        return s.back()(0);
    };
    // The missing tail behaves like delta^{3/2}.
    return richardson({upto(guard), upto(guard / 4.0)}, {guard, guard / 4.0}, 1.5, 1.0);
}

PansuLimit pansu_limit(const std::vector<double>& rho_list, double guard, int nodes) {
    PansuLimit out;
    for (double rho : rho_list) {
        out.half_length.params.push_back(rho);
        out.half_length.values.push_back(pansu_half_length(rho, guard, nodes));
    }
    out.half_length.limit = richardson(out.half_length.values, out.half_length.params, 1.0, 2.0);
    out.s_bar = out.half_length.limit;
    out.two_s_bar = 2.0 * out.s_bar;
    return out;
}

double vertical_plane_spline_length(const CubicSpline& x, const CubicSpline& t) {
    static const Surface plane = vertical_plane();
    const Curve curve("competitor", x.knot(0), x.knot(x.segments()),
                      [&](double s) { return v2(x.value(s), t.value(s)); },
                      [&](double s) { return v2(x.derivative(s), t.derivative(s)); });
    double total = 0.0;
    for (int i = 0; i < t.segments(); ++i) {
        const double lo = t.knot(i), hi = t.knot(i + 1), h = hi - lo;
        const auto c = t.segment(i);
        // roots of t'(u) = c1 + 2 c2 u + 3 c3 u^2 inside (0, h)
        std::vector<double> cuts{lo};
        const double qa = 3.0 * c[3], qb = 2.0 * c[2], qc = c[1];
        std::vector<double> roots;
        if (std::abs(qa) > 1e-14) {
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc > 0.0) {
                const double sq = std::sqrt(disc);
                const double q = -0.5 * (qb + std::copysign(sq, qb));
                roots = {q / qa, qc / q};
            }
        } else if (std::abs(qb) > 1e-14) {
            roots = {-qc / qb};
        }
        std::sort(roots.begin(), roots.end());
        for (double r : roots)
            if (r > 0.0 && r < h) cuts.push_back(lo + r);
        cuts.push_back(hi);
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            total += length_Ld(curve, *plane.chart_frame, 2, cuts[k], cuts[k + 1], 5);
    }
    return total;
}

MinimizerReport vertical_plane_minimizer_test(const Vec& p, const Vec& q, int trial_count, std::uint64_t seed,
                                              double slack) {
    const Surface plane = vertical_plane();
    const AdaptedFrame& chart = *plane.chart_frame;
    MinimizerReport rep;
    rep.slack = slack;
    rep.trials = trial_count;
    // Vertical segment from p to (x0, t1), then the horizontal segment to q.
    const Curve vertical("alpha_1", 0.0, 1.0, [&](double s) { return v2(p(0), s * q(1) + (1 - s) * p(1)); },
                         [&](double) { return v2(0.0, q(1) - p(1)); });
    const Curve horizontal("alpha_0", 1.0, 2.0, [&](double s) { return v2((s - 1) * q(0) + (2 - s) * p(0), q(1)); },
                           [&](double) { return v2(q(0) - p(0), 0.0); });
    rep.two_segment_length = length_Ld(vertical, chart, 2, 0.0, 1.0, 1001) + length_Ld(horizontal, chart, 2, 1.0, 2.0, 1001);

    std::mt19937_64 rng(seed);
    const double xlo = std::min(p(0), q(0)) - 1.0, xhi = std::max(p(0), q(0)) + 1.0;
    const double tlo = std::min(p(1), q(1)) - 1.0, thi = std::max(p(1), q(1)) + 1.0;
    std::uniform_real_distribution<double> ux(xlo, xhi), ut(tlo, thi);
    rep.min_competitor = INFINITY;
    for (int trial = 0; trial < trial_count; ++trial) {
        std::vector<double> s(7), xs(7), ts(7);
        for (int i = 0; i < 7; ++i) s[i] = i / 6.0;
        xs.front() = p(0);
        ts.front() = p(1);
        xs.back() = q(0);
        ts.back() = q(1);
        for (int i = 1; i < 6; ++i) {
            xs[i] = ux(rng);
            ts[i] = ut(rng);
        }
        const double len = vertical_plane_spline_length(CubicSpline(s, xs), CubicSpline(s, ts));
        rep.min_competitor = std::min(rep.min_competitor, len);
        if (len < rep.two_segment_length - slack) ++rep.violations;
    }
    return rep;
}

}  // namespace graded
