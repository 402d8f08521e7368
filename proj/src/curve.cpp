#include "graded/curve.hpp"

#include "graded/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace graded {

Curve::Curve(std::string label, double a, double b, CurveFn position, CurveFn velocity)
    : label_(std::move(label)), a_(a), b_(b), pos_(std::move(position)), vel_(std::move(velocity)) {
    if (!(b > a)) throw InputError("curve '" + label_ + "' needs a domain with a < b");
    if (!pos_) throw InputError("curve '" + label_ + "' has no position map");
}

Vec Curve::position(double t) const {
    Vec p = pos_(t);
    if (!p.allFinite()) throw EvaluationError("curve '" + label_ + "' position is not finite");
    return p;
}

Vec Curve::finite_difference_velocity(double t) const {
    const double h = 1e-6 * (b_ - a_);
    if (t - h < a_) return (-3.0 * position(t) + 4.0 * position(t + h) - position(t + 2 * h)) / (2 * h);
    if (t + h > b_) return (3.0 * position(t) - 4.0 * position(t - h) + position(t - 2 * h)) / (2 * h);
    return (position(t + h) - position(t - h)) / (2 * h);
}

Vec Curve::velocity(double t) const {
    if (!vel_) return finite_difference_velocity(t);
    Vec v = vel_(t);
    if (!v.allFinite()) throw EvaluationError("curve '" + label_ + "' velocity is not finite");
    return v;
}

Curve polynomial_curve(std::string label, std::vector<Polynomial> components, double a, double b) {
    std::vector<Polynomial> deriv;
    for (const auto& c : components) deriv.push_back(c.derivative());
    auto eval = [](const std::vector<Polynomial>& ps, double t) {
        Vec v(static_cast<Eigen::Index>(ps.size()));
        for (std::size_t i = 0; i < ps.size(); ++i) v(static_cast<Eigen::Index>(i)) = ps[i](t);
        return v;
    };
    return Curve(std::move(label), a, b, [components, eval](double t) { return eval(components, t); },
                 [deriv, eval](double t) { return eval(deriv, t); });
}

Curve hermite_curve(std::string label, std::vector<double> t, std::vector<Vec> points, std::vector<Vec> velocities) {
    const double a = t.front(), b = t.back();
    auto h = std::make_shared<HermiteInterpolant>(std::move(t), std::move(points), std::move(velocities));
    return Curve(std::move(label), a, b, [h](double s) { return h->value(s); }, [h](double s) { return h->derivative(s); });
}

Curve sampled_curve(std::string label, std::vector<double> t, std::vector<Vec> points) {
    const std::size_t n = t.size();
    if (n < 2 || points.size() != n) throw InputError("sampled curve needs at least two (t, point) rows");
    std::vector<Vec> slopes(n);
    bool uniform = n >= 5;
    const double h = (t.back() - t.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n && uniform; ++i)
        if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * std::abs(h)) uniform = false;
    if (uniform) {
        slopes = derivative(points, h);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t l = i == 0 ? 0 : i - 1, r = i + 1 == n ? n - 1 : i + 1;
            slopes[i] = (points[r] - points[l]) / (t[r] - t[l]);
        }
    }
    return hermite_curve(std::move(label), std::move(t), std::move(points), std::move(slopes));
}

Curve reparameterize(const Curve& curve, std::function<double(double)> phi, std::function<double(double)> dphi,
                     double u0, double u1) {
    return Curve(curve.label() + "/reparameterized", u0, u1, [curve, phi](double u) { return curve.position(phi(u)); },
                 [curve, phi, dphi](double u) { return Vec(curve.velocity(phi(u)) * dphi(u)); });
}

Curve arc_length_reparameterize(const Curve& curve, const AdaptedFrame& frame, int d, int table_nodes) {
    const Grid grid(curve.a(), curve.b(), table_nodes);
    std::vector<double> theta(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        theta[i] = length_density(curve, frame, d, grid.node(i));
        if (!(theta[i] > 0.0)) {
            std::ostringstream os;
            os << "length density of degree " << d << " vanishes at t = " << grid.node(i)
               << "; arc-length reparameterization needs a nonsingular interval";
            throw SingularDensityError(os.str());
        }
    }
    const std::vector<double> s = cumulative_integral(theta, grid.step());
    std::vector<Vec> tv(grid.size()), slope(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        tv[i] = Vec::Constant(1, grid.node(i));
        slope[i] = Vec::Constant(1, 1.0 / theta[i]);
    }
    auto inverse = std::make_shared<HermiteInterpolant>(s, tv, slope);
    const double total = s.back();
    auto t_of = [inverse, curve](double u) { return std::clamp(inverse->value(u)(0), curve.a(), curve.b()); };
    return Curve(
        curve.label() + "/arclength", 0.0, total, [curve, t_of](double u) { return curve.position(t_of(u)); },
        [curve, frame, d, t_of](double u) {
            const double t = t_of(u);
            return Vec(curve.velocity(t) / length_density(curve, frame, d, t));
        });
}

DegreeProfile degree_profile(const Curve& curve, const AdaptedFrame& frame, int grid_size) {
    const Grid grid(curve.a(), curve.b(), grid_size);
    DegreeProfile prof;
    prof.grid = grid.nodes();
    prof.pointwise_degree.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double t = grid.node(i);
        const Vec v = curve.velocity(t);
        if (!(v.norm() > 0.0)) {
            std::ostringstream os;
            os << "curve '" << curve.label() << "' is not immersed: zero velocity at t = " << t;
            throw ImmersionError(os.str());
        }
        prof.pointwise_degree[i] = degree_of_vector(frame, curve.position(t), v);
    }
    prof.curve_degree = *std::max_element(prof.pointwise_degree.begin(), prof.pointwise_degree.end());
    for (int i = 0; i < grid.size(); ++i)
        if (prof.pointwise_degree[i] < prof.curve_degree) prof.singular_nodes.push_back(i);
    return prof;
}

double length_density(const Curve& curve, const AdaptedFrame& frame, int d, double t) {
    if (d < 1) throw InputError("degree must be positive");
    if (d > frame.layers()) return 0.0;
    const Vec h = frame.orthonormal_coefficients(curve.position(t), curve.velocity(t));
    const int lo = frame.n_at(d - 1), hi = frame.n_at(d);
    return h.segment(lo, hi - lo).norm();
}

namespace {

void check_interval(const Curve& curve, double a, double b) {
    const double slack = 1e-12 * std::max(1.0, std::abs(curve.b() - curve.a()));
    if (a < curve.a() - slack || b > curve.b() + slack || b < a)
        throw InputError("interval lies outside the domain of curve '" + curve.label() + "'");
}

}  // namespace

double length_Ld(const Curve& curve, const AdaptedFrame& frame, int d, double a, double b, int quad_nodes) {
    check_interval(curve, a, b);
    if (b == a) return 0.0;
    const Grid grid(a, b, quad_nodes);
    std::vector<double> f(grid.size());
    for (int i = 0; i < grid.size(); ++i) f[i] = length_density(curve, frame, d, grid.node(i));
    return simpson(f, grid.step());
}

double riemannian_length_gr(const Curve& curve, const AdaptedFrame& frame, double r, double a, double b,
                            int quad_nodes) {
    if (!(r > 0.0)) throw InputError("blow-up parameter r must be positive");
    check_interval(curve, a, b);
    if (b == a) return 0.0;
    const int n = frame.dimension();
    Vec w(n);
    for (int j = 0; j < n; ++j) w(j) = std::pow(r, -(frame.degree_of(j) - 1));
    const Grid grid(a, b, quad_nodes);
    std::vector<double> f(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double t = grid.node(i);
        const Vec h = frame.orthonormal_coefficients(curve.position(t), curve.velocity(t));
        f[i] = std::sqrt((w.array() * h.array().square()).sum());
    }
    return simpson(f, grid.step());
}

}  // namespace graded
