#include "graded/admissibility.hpp"

#include "graded/errors.hpp"

#include <cmath>
#include <sstream>

namespace graded {

AdmissibilitySystem::AdmissibilitySystem(Grid grid, int k, int vertical, std::vector<Mat> a_half,
                                         std::vector<Mat> b_half)
    : grid_(grid), k_(k), m_(vertical), a_(std::move(a_half)), b_(std::move(b_half)) {
    const std::size_t expected = 2 * static_cast<std::size_t>(grid_.size()) - 1;
    if (a_.size() != expected || b_.size() != expected)
        throw InputError("admissibility samples must cover every node and midpoint");
    for (std::size_t i = 0; i < expected; ++i) {
        if (!a_[i].allFinite() || !b_[i].allFinite())
            throw EvaluationError("non-finite entry in A or B at sample " + std::to_string(i));
    }
    d_ = fundamental_matrix(grid_, [this](double t) { return B_at(t); });
}

AdmissibilitySystem AdmissibilitySystem::from_samplers(const Grid& grid, int k, int vertical, const MatrixFn& a,
                                                       const MatrixFn& b) {
    const int count = 2 * grid.size() - 1;
    std::vector<Mat> as(count), bs(count);
    for (int i = 0; i < count; ++i) {
        const double t = i == count - 1 ? grid.b() : grid.a() + 0.5 * grid.step() * i;
        as[i] = a(t);
        bs[i] = b(t);
    }
    return AdmissibilitySystem(grid, k, vertical, std::move(as), std::move(bs));
}

std::size_t AdmissibilitySystem::half_index(double t) const {
    const long idx = std::lround((t - grid_.a()) / (0.5 * grid_.step()));
    const long last = static_cast<long>(a_.size()) - 1;
    return static_cast<std::size_t>(std::clamp(idx, 0L, last));
}

const Mat& AdmissibilitySystem::A_at(double t) const { return a_[half_index(t)]; }
const Mat& AdmissibilitySystem::B_at(double t) const { return b_[half_index(t)]; }

double AdmissibilitySystem::determinant_identity_error() const {
    if (m_ == 0) return 0.0;
    std::vector<double> tr(grid_.size());
    for (int i = 0; i < grid_.size(); ++i) tr[i] = B(i).trace();
    const std::vector<double> integral = cumulative_integral(tr, grid_.step());
    double worst = 0.0;
    for (int i = 0; i < grid_.size(); ++i) {
        const double ref = std::exp(integral[i]);
        worst = std::max(worst, std::abs(d_[i].determinant() - ref) / ref);
    }
    return worst;
}

std::vector<Mat> fundamental_matrix(const Grid& grid, const MatrixFn& b_at) {
    const Mat b0 = b_at(grid.a());
    const Eigen::Index m = b0.rows();
    std::vector<Mat> out;
    out.reserve(grid.size());
    if (m == 0) {
        out.assign(grid.size(), Mat(0, 0));
        return out;
    }
    const Mat eye = Mat::Identity(m, m);
    const Vec d0 = Eigen::Map<const Vec>(eye.data(), m * m);
    const auto states = integrate_ode(
        [&](double t, const Vec& y) {
            const Eigen::Map<const Mat> d(y.data(), m, m);
            const Mat dd = d * b_at(t);
            return Vec(Eigen::Map<const Vec>(dd.data(), m * m));
        },
        d0, grid);
    for (const Vec& s : states) out.push_back(Eigen::Map<const Mat>(s.data(), m, m));
    return out;
}

AdmissibilitySystem build_system(const Curve& curve, const AdaptedFrame& frame, int d, int grid_size) {
    return build_system(curve, frame, d, grid_size, curve.a(), curve.b());
}

AdmissibilitySystem build_system(const Curve& curve, const AdaptedFrame& input_frame, int d, int grid_size, double a,
                                 double b) {
    const AdaptedFrame frame = input_frame.orthonormalized();
    if (d < 1 || d > frame.layers()) throw InputError("degree must lie between 1 and the step of the frame");
    if (grid_size < 3 || grid_size % 2 == 0) throw InputError("grid node count must be odd and at least 3");
    const Grid grid(a, b, grid_size);
    const int n = frame.dimension(), k = frame.n_at(d), m = n - k;
    const int count = 2 * grid.size() - 1;
    std::vector<Mat> as(count, Mat::Zero(m, k)), bs(count, Mat::Zero(m, m));
    for (int s = 0; s < count; ++s) {
        const double t = s == count - 1 ? grid.b() : grid.a() + 0.5 * grid.step() * s;
        const Vec p = curve.position(t);
        const Vec v = curve.velocity(t);
        const int deg = degree_of_vector(frame, p, v);
        if (deg > d) {
            std::ostringstream os;
            os << "curve '" << curve.label() << "' has pointwise degree " << deg << " > " << d << " at t = " << t;
            throw InadmissibleCurveError(os.str());
        }
        if (m == 0) continue;
        const Vec h = frame.expansion(p, v);
        const Tensor3 c = frame.structure_functions(p);
        for (int r = 0; r < m; ++r) {
            for (int i = 0; i < k; ++i) {
                double acc = 0.0;
                for (int l = 0; l < k; ++l) acc += h(l) * c(l, i, k + r);
                as[s](r, i) = acc;
            }
            for (int j = 0; j < m; ++j) {
                double acc = 0.0;
                for (int l = 0; l < k; ++l) acc += h(l) * c(l, k + j, k + r);
                bs[s](r, j) = acc;
            }
        }
    }
    return AdmissibilitySystem(grid, k, m, std::move(as), std::move(bs));
}

VerticalField solve_admissibility(const AdmissibilitySystem& sys, const ControlField& g, const Vec& f_a) {
    if (f_a.size() != sys.vertical()) throw InputError("initial vertical value has wrong length");
    VerticalField out;
    out.t = sys.grid().nodes();
    if (sys.vertical() == 0) {
        out.f.assign(out.t.size(), Vec(0));
        return out;
    }
    out.f = integrate_ode([&](double t, const Vec& f) { return Vec(-sys.B_at(t) * f - sys.A_at(t) * g(t)); }, f_a,
                          sys.grid());
    return out;
}

HolonomyResult holonomy(const AdmissibilitySystem& sys, const ControlField& g) {
    const Grid& grid = sys.grid();
    HolonomyResult res;
    const double edge = std::max(g(grid.a()).cwiseAbs().maxCoeff(), g(grid.b()).cwiseAbs().maxCoeff());
    res.support_warning = !g.compact || edge > 1e-12;
    if (sys.vertical() == 0) {
        res.value = Vec(0);
        return res;
    }
    std::vector<Mat> integrand(grid.size());
    for (int i = 0; i < grid.size(); ++i) integrand[i] = sys.D(i) * sys.A(i) * g(grid.node(i));
    const Mat integral = simpson(integrand, grid.step());
    res.value = -sys.D(grid.size() - 1).partialPivLu().solve(integral);
    return res;
}

std::vector<Vec> admissibility_residual(const AdmissibilitySystem& sys, const ControlField& g,
                                        const VerticalField& f) {
    const Grid& grid = sys.grid();
    if (static_cast<int>(f.f.size()) != grid.size()) throw InputError("vertical field must be sampled on the system grid");
    if (sys.vertical() == 0) return std::vector<Vec>(grid.size(), Vec(0));
    const std::vector<Vec> df = derivative(f.f, grid.step());
    std::vector<Vec> r(grid.size());
    for (int i = 0; i < grid.size(); ++i) r[i] = df[i] + sys.B(i) * f.f[i] + sys.A(i) * g(grid.node(i));
    return r;
}

double max_norm(const std::vector<Vec>& samples) {
    double w = 0.0;
    for (const Vec& v : samples)
        if (v.size()) w = std::max(w, v.cwiseAbs().maxCoeff());
    return w;
}

}  // namespace graded
