#include "graded/variation.hpp"

#include "graded/errors.hpp"
#include "graded/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace graded {

Tensor3 connection_table(const AdaptedFrame& input, const Vec& p) {
    const AdaptedFrame frame = input.orthonormalized();
    const Tensor3 c = frame.structure_functions(p);
    const int n = frame.dimension();
    Tensor3 g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) g(i, j, k) = 0.5 * (c(i, j, k) - c(j, k, i) + c(k, i, j));
    return g;
}

Tensor3 cell_coefficients(const AdaptedFrame& frame, const Vec& p) {
    const Tensor3 g = connection_table(frame, p);
    const int n = g.size();
    Tensor3 ct(n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ct(l, i, j) = -g(l, j, i) + g(i, j, l);
    return ct;
}

namespace {

struct NodeData {
    Vec h;       // orthonormal coefficients of the velocity
    Tensor3 ct;  // cell coefficients at the point
};

NodeData node_data(const Curve& curve, const AdaptedFrame& frame, double t) {
    const Vec p = curve.position(t);
    return {frame.expansion(p, curve.velocity(t)), cell_coefficients(frame, p)};
}

}  // namespace

AlphaBeta alpha_beta(const Curve& curve, const AdaptedFrame& input, int d, const Grid& grid) {
    const AdaptedFrame frame = input.orthonormalized();
    if (d < 1 || d > frame.layers()) throw InputError("degree must lie between 1 and the step of the frame");
    const int n = frame.dimension(), lo = frame.n_at(d - 1), nd = frame.n_at(d);
    AlphaBeta ab;
    ab.n_d = nd;
    ab.t = grid.nodes();
    for (double t : ab.t) {
        const NodeData nd_ = node_data(curve, frame, t);
        Vec alpha = Vec::Zero(nd);
        alpha.segment(lo, nd - lo) = nd_.h.segment(lo, nd - lo);
        Vec beta = Vec::Zero(n);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < nd; ++l)
                for (int j = lo; j < nd; ++j) beta(i) += nd_.h(j) * nd_.h(l) * nd_.ct(l, i, j);
        ab.alpha.push_back(std::move(alpha));
        ab.beta.push_back(std::move(beta));
    }
    return ab;
}

std::vector<Vec> first_variation_field(const Curve& curve, const AdaptedFrame& input, int d, const Grid& grid) {
    const AdaptedFrame frame = input.orthonormalized();
    if (d < 1 || d > frame.layers()) throw InputError("degree must lie between 1 and the step of the frame");
    const int n = frame.dimension(), lo = frame.n_at(d - 1), nd = frame.n_at(d);
    std::vector<NodeData> data;
    std::vector<Vec> unit(grid.size());
    std::vector<double> theta(grid.size());
    for (int s = 0; s < grid.size(); ++s) {
        data.push_back(node_data(curve, frame, grid.node(s)));
        theta[s] = data.back().h.segment(lo, nd - lo).norm();
        if (!(theta[s] > 1e-12 * std::max(1.0, data.back().h.norm()))) {
            std::ostringstream os;
            os << "length density of degree " << d << " vanishes at t = " << grid.node(s);
            throw SingularDensityError(os.str());
        }
        unit[s] = data.back().h.segment(lo, nd - lo) / theta[s];
    }
    const std::vector<Vec> dunit = derivative(unit, grid.step());
    std::vector<Vec> out(grid.size());
    for (int s = 0; s < grid.size(); ++s) {
        const Vec& h = data[s].h;
        Vec hv = Vec::Zero(n);
        hv.segment(lo, nd - lo) = -dunit[s];
        for (int i = 0; i < n; ++i)
            for (int j = lo; j < nd; ++j)
                for (int l = 0; l < nd; ++l) hv(i) += h(j) * h(l) / theta[s] * data[s].ct(l, i, j);
        out[s] = std::move(hv);
    }
    return out;
}

GeodesicResidual geodesic_residual(const Curve& curve, const AdaptedFrame& input, int d,
                                   const AdmissibilitySystem& sys, const Tolerances& tol) {
    const AdaptedFrame frame = input.orthonormalized();
    const Grid& grid = sys.grid();
    const int n = frame.dimension(), nd = frame.n_at(d), m = n - nd;
    if (sys.k() != nd || sys.vertical() != m) throw InputError("admissibility system was built for another degree");
    GeodesicResidual out;
    for (int s = 0; s < grid.size(); ++s)
        out.density_deviation =
            std::max(out.density_deviation, std::abs(length_density(curve, frame, d, grid.node(s)) - 1.0));
    if (out.density_deviation > tol.density_tol) {
        std::ostringstream os;
        os << "geodesic residual needs theta_" << d << " = 1 (deviation " << out.density_deviation
           << "); reparameterize the curve by its degree-" << d << " length first";
        throw NormalizationError(os.str());
    }
    const AlphaBeta ab = alpha_beta(curve, frame, d, grid);
    const std::vector<Vec> dalpha = derivative(ab.alpha, grid.step());
    std::vector<Vec> w(grid.size());
    std::vector<Mat> da(grid.size());
    if (m > 0) {
        std::vector<Mat> integrand(grid.size());
        for (int s = 0; s < grid.size(); ++s)
            integrand[s] = sys.D(s).transpose().partialPivLu().solve(ab.beta_v(s));
        const std::vector<Mat> running = cumulative_integral(integrand, grid.step());
        Mat design(static_cast<Eigen::Index>(grid.size()) * nd, m);
        Vec target(static_cast<Eigen::Index>(grid.size()) * nd);
        for (int s = 0; s < grid.size(); ++s) {
            da[s] = sys.D(s) * sys.A(s);
            w[s] = -dalpha[s] + ab.beta_h(s) + da[s].transpose() * running[s].col(0);
            design.block(static_cast<Eigen::Index>(s) * nd, 0, nd, m) = da[s].transpose();
            target.segment(static_cast<Eigen::Index>(s) * nd, nd) = w[s];
        }
        out.fitted_k = least_squares(design, target);
    } else {
        out.fitted_k = Vec(0);
        for (int s = 0; s < grid.size(); ++s) w[s] = -dalpha[s] + ab.beta_h(s);
    }
    out.residual.resize(grid.size());
    for (int s = 0; s < grid.size(); ++s) {
        out.residual[s] = m > 0 ? Vec(w[s] - da[s].transpose() * out.fitted_k) : w[s];
        out.max_norm = std::max(out.max_norm, out.residual[s].cwiseAbs().maxCoeff());
    }
    return out;
}

Curve heisenberg_geodesic(double k, const Vec& p0, const Vec& v0, double t_end, int nodes) {
    if (p0.size() != 3 || v0.size() != 2) throw InputError("heisenberg_geodesic needs a point in R^3 and a planar unit vector");
    if (std::abs(v0.norm() - 1.0) > 1e-12) throw InputError("initial horizontal velocity must be a unit vector");
    const AdaptedFrame frame = frames::heisenberg(1);
    const Grid grid(0.0, t_end, nodes);
    Vec y0(6);
    y0 << p0, v0(0), v0(1), 0.0;
    // left-invariant frame: the connection table is constant
    const Tensor3 g = connection_table(frame, p0);
    auto rhs = [&frame, &g, k](double, const Vec& y) {
        const Vec p = y.head(3), h = y.tail(3);
        Vec dh(3);
        const Vec jh = (Vec(3) << -h(1), h(0), 0.0).finished();
        for (int i = 0; i < 3; ++i) {
            double acc = 0.0;
            for (int l = 0; l < 3; ++l)
                for (int j = 0; j < 3; ++j) acc += h(l) * h(j) * g(l, j, i);
            dh(i) = -acc - 2.0 * k * jh(i);
        }
        Vec out(6);
        out << frame.matrix_at(p) * h, dh;
        return out;
    };
    const auto states = integrate_ode(rhs, y0, grid);
    std::vector<Vec> pos, vel;
    for (const Vec& s : states) {
        pos.push_back(s.head(3));
        vel.push_back(frame.matrix_at(s.head(3)) * s.tail(3));
    }
    std::ostringstream label;
    label << "heisenberg_geodesic(k=" << k << ")";
    return hermite_curve(label.str(), grid.nodes(), std::move(pos), std::move(vel));
}

double VariationCheck::relative_error() const {
    const double scale = std::max(std::abs(finite_difference), std::abs(predicted));
    return scale > 0.0 ? std::abs(finite_difference - predicted) / scale : 0.0;
}

VariationCheck variation_consistency(const Curve& curve, const AdaptedFrame& frame, int d, const Curve& v, double ds,
                                     int quad_nodes) {
    auto shifted = [&](double s) {
        return Curve(
            curve.label() + "/varied", curve.a(), curve.b(),
            [&curve, &v, s](double t) { return Vec(curve.position(t) + s * v.position(t)); },
            [&curve, &v, s](double t) { return Vec(curve.velocity(t) + s * v.velocity(t)); });
    };
    VariationCheck out;
    const double lp = length_Ld(shifted(ds), frame, d, curve.a(), curve.b(), quad_nodes);
    const double lm = length_Ld(shifted(-ds), frame, d, curve.a(), curve.b(), quad_nodes);
    out.finite_difference = (lp - lm) / (2.0 * ds);
    const Grid grid(curve.a(), curve.b(), quad_nodes);
    const std::vector<Vec> h = first_variation_field(curve, frame, d, grid);
    std::vector<double> integrand(grid.size());
    for (int s = 0; s < grid.size(); ++s) {
        const double t = grid.node(s);
        const Vec vf = frame.orthonormal_coefficients(curve.position(t), v.position(t));
        integrand[s] = vf.dot(h[s]);
    }
    out.predicted = simpson(integrand, grid.step());
    return out;
}

}  // namespace graded
