#include "graded/frame.hpp"

#include "graded/errors.hpp"

#include <algorithm>
#include <cmath>

namespace graded {

Vec VectorFieldSpec::evaluate(const Vec& p) const {
    Vec v = value(p);
    if (!v.allFinite()) throw EvaluationError("field '" + label + "' is not finite at the queried point");
    return v;
}

Mat VectorFieldSpec::finite_difference_jacobian(const Vec& p) const {
    const Eigen::Index n = p.size();
    const double h = 1e-5 * std::max(1.0, p.cwiseAbs().maxCoeff());
    Mat j(n, n);
    Vec q = p;
    for (Eigen::Index k = 0; k < n; ++k) {
        q(k) = p(k) + h;
        const Vec fp = evaluate(q);
        q(k) = p(k) - h;
        const Vec fm = evaluate(q);
        q(k) = p(k);
        j.col(k) = (fp - fm) / (2.0 * h);
    }
    return j;
}

Mat VectorFieldSpec::jacobian_at(const Vec& p) const {
    if (!jacobian) return finite_difference_jacobian(p);
    Mat j = jacobian(p);
    if (!j.allFinite()) throw EvaluationError("Jacobian of field '" + label + "' is not finite");
    return j;
}

VectorFieldSpec polynomial_field(std::string label, std::vector<MultiPolynomial> components) {
    const int n = static_cast<int>(components.size());
    for (const auto& c : components)
        if (c.variables() != n) throw InputError("polynomial field '" + label + "' has inconsistent dimension");
    auto comps = std::make_shared<std::vector<MultiPolynomial>>(std::move(components));
    VectorFieldSpec f;
    f.label = std::move(label);
    f.value = [comps](const Vec& p) {
        Vec v(static_cast<Eigen::Index>(comps->size()));
        for (std::size_t i = 0; i < comps->size(); ++i) v(static_cast<Eigen::Index>(i)) = (*comps)[i](p);
        return v;
    };
    f.jacobian = [comps](const Vec& p) {
        const auto n = static_cast<Eigen::Index>(comps->size());
        Mat j(n, n);
        for (Eigen::Index i = 0; i < n; ++i) j.row(i) = (*comps)[static_cast<std::size_t>(i)].gradient(p).transpose();
        return j;
    };
    return f;
}

VectorFieldSpec constant_field(std::string label, const Vec& value) {
    VectorFieldSpec f;
    f.label = std::move(label);
    f.value = [value](const Vec&) { return value; };
    const auto n = value.size();
    f.jacobian = [n](const Vec&) { return Mat::Zero(n, n); };
    return f;
}

Vec lie_bracket(const VectorFieldSpec& x, const VectorFieldSpec& y, const Vec& p) {
    const Vec xv = x.evaluate(p), yv = y.evaluate(p);
    return y.jacobian_at(p) * xv - x.jacobian_at(p) * yv;
}

struct AdaptedFrame::Impl {
    std::string name;
    std::vector<VectorFieldSpec> fields;
    std::vector<int> growth;
    std::vector<int> degree;
    MetricFn metric;
    Tolerances tol;
};

AdaptedFrame::AdaptedFrame(std::string name, std::vector<VectorFieldSpec> fields, std::vector<int> growth_vector,
                           MetricFn metric, Tolerances tol) {
    auto impl = std::make_shared<Impl>();
    const int n = static_cast<int>(fields.size());
    if (n == 0) throw InputError("frame '" + name + "' has no fields");
    if (growth_vector.empty()) throw InputError("frame '" + name + "' has an empty growth vector");
    int prev = 0;
    for (int g : growth_vector) {
        if (g <= prev)
            throw InputError("frame '" + name + "': growth vector must be strictly increasing (equiregular flag)");
        prev = g;
    }
    if (growth_vector.back() != n)
        throw InputError("frame '" + name + "': growth vector must end at the dimension " + std::to_string(n));
    impl->degree.resize(n);
    for (int j = 0, layer = 0; j < n; ++j) {
        while (j >= growth_vector[layer]) ++layer;
        impl->degree[j] = layer + 1;
    }
    impl->name = std::move(name);
    impl->fields = std::move(fields);
    impl->growth = std::move(growth_vector);
    impl->metric = std::move(metric);
    impl->tol = tol;
    impl_ = std::move(impl);
}

const std::string& AdaptedFrame::name() const { return impl_->name; }
int AdaptedFrame::dimension() const { return static_cast<int>(impl_->fields.size()); }
const std::vector<int>& AdaptedFrame::growth_vector() const { return impl_->growth; }
int AdaptedFrame::layers() const { return static_cast<int>(impl_->growth.size()); }
int AdaptedFrame::degree_of(int j) const { return impl_->degree.at(static_cast<std::size_t>(j)); }
const VectorFieldSpec& AdaptedFrame::field(int j) const { return impl_->fields.at(static_cast<std::size_t>(j)); }
const std::vector<VectorFieldSpec>& AdaptedFrame::fields() const { return impl_->fields; }
const Tolerances& AdaptedFrame::tolerances() const { return impl_->tol; }
bool AdaptedFrame::orthonormal() const { return !impl_->metric; }

int AdaptedFrame::n_at(int d) const {
    if (d <= 0) return 0;
    if (d >= layers()) return dimension();
    return impl_->growth[static_cast<std::size_t>(d - 1)];
}

Mat AdaptedFrame::metric_at(const Vec& p) const {
    const int n = dimension();
    if (!impl_->metric) return Mat::Identity(n, n);
    Mat g = impl_->metric(p);
    if (g.rows() != n || g.cols() != n || !g.allFinite())
        throw InputError("metric of frame '" + name() + "' must be a finite " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");
    return 0.5 * (g + g.transpose());
}

Mat AdaptedFrame::matrix_at(const Vec& p) const {
    const int n = dimension();
    if (p.size() != n) throw InputError("chart point has wrong dimension for frame '" + name() + "'");
    Mat m(n, n);
    for (int j = 0; j < n; ++j) {
        const Vec v = impl_->fields[j].evaluate(p);
        if (v.size() != n) throw EvaluationError("field '" + impl_->fields[j].label + "' has wrong dimension");
        m.col(j) = v;
    }
    const RankResult r = rank_by_svd(m, impl_->tol.rank_tol);
    if (r.rank < n) throw DegenerateFrameError("frame '" + name() + "' is degenerate at the queried point");
    return m;
}

Vec AdaptedFrame::expansion(const Vec& p, const Vec& v) const { return matrix_at(p).colPivHouseholderQr().solve(v); }

namespace {

Mat cholesky_upper(const Mat& g, const std::string& name) {
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) throw InputError("metric of frame '" + name + "' is not positive definite");
    return llt.matrixU();
}

}  // namespace

Vec AdaptedFrame::orthonormal_coefficients(const Vec& p, const Vec& v) const {
    const Vec c = expansion(p, v);
    if (orthonormal()) return c;
    return cholesky_upper(metric_at(p), name()) * c;
}

Tensor3 AdaptedFrame::structure_functions(const Vec& p) const {
    const int n = dimension();
    const Mat m = matrix_at(p);
    const auto qr = m.colPivHouseholderQr();
    std::vector<Vec> val(n);
    std::vector<Mat> jac(n);
    for (int j = 0; j < n; ++j) {
        val[j] = m.col(j);
        jac[j] = impl_->fields[j].jacobian_at(p);
    }
    Tensor3 c(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vec br = jac[j] * val[i] - jac[i] * val[j];
            const Vec coeff = qr.solve(br);
            for (int k = 0; k < n; ++k) {
                c(i, j, k) = coeff(k);
                c(j, i, k) = -coeff(k);
            }
        }
    }
    return c;
}

AdaptedFrame AdaptedFrame::orthonormalized() const {
    if (orthonormal()) return *this;
    const auto base = impl_;
    const AdaptedFrame self = *this;
    std::vector<VectorFieldSpec> fields;
    const int n = dimension();
    for (int j = 0; j < n; ++j) {
        VectorFieldSpec f;
        f.label = base->fields[j].label + "~";
        f.value = [self, j](const Vec& p) {
            const Mat x = self.matrix_at(p);
            const Mat r = cholesky_upper(self.metric_at(p), self.name());
            const Mat u = r.triangularView<Eigen::Upper>().solve(Mat::Identity(r.rows(), r.cols()));
            return Vec(x * u.col(j));
        };
        fields.push_back(std::move(f));
    }
    return AdaptedFrame(base->name + "/orthonormal", std::move(fields), base->growth, {}, base->tol);
}

AdaptedFrame AdaptedFrame::with_metric(MetricFn metric, std::string new_name) const {
    if (new_name.empty()) new_name = name();
    return AdaptedFrame(std::move(new_name), impl_->fields, impl_->growth, std::move(metric), impl_->tol);
}

double FiltrationReport::worst() const {
    double w = 0.0;
    for (const auto& p : pairs) w = std::max(w, p.worst);
    return w;
}

bool FiltrationReport::ok() const {
    return std::none_of(pairs.begin(), pairs.end(), [](const FiltrationPair& p) { return p.flagged; });
}

FiltrationReport verify_filtration(const AdaptedFrame& frame, const std::vector<Vec>& sample_points) {
    if (sample_points.empty()) throw InputError("verify_filtration needs at least one sample point");
    const int s = frame.layers(), n = frame.dimension();
    FiltrationReport report;
    for (int li = 1; li <= s; ++li) {
        for (int lj = li; lj <= s; ++lj) {
            FiltrationPair pair;
            pair.layer_i = li;
            pair.layer_j = lj;
            pair.worst_point = sample_points.front();
            if (li + lj < s) {
                for (const Vec& p : sample_points) {
                    const Mat m = frame.matrix_at(p);
                    const auto qr = m.colPivHouseholderQr();
                    for (int a = frame.n_at(li - 1); a < frame.n_at(li); ++a) {
                        for (int b = frame.n_at(lj - 1); b < frame.n_at(lj); ++b) {
                            const Vec coeff = qr.solve(lie_bracket(frame.field(a), frame.field(b), p));
                            for (int k = frame.n_at(li + lj); k < n; ++k) {
                                if (std::abs(coeff(k)) > pair.worst) {
                                    pair.worst = std::abs(coeff(k));
                                    pair.worst_point = p;
                                }
                            }
                        }
                    }
                }
            }
            pair.flagged = pair.worst > frame.tolerances().bracket_tol;
            report.pairs.push_back(std::move(pair));
        }
    }
    return report;
}

int degree_of_vector(const AdaptedFrame& frame, const Vec& p, const Vec& v) {
    if (v.size() != frame.dimension()) throw InputError("vector has wrong dimension");
    const Vec c = frame.expansion(p, v);
    const double scale = c.norm();
    if (!(scale > 0.0)) throw UndefinedDegreeError("degree of the zero vector is undefined");
    const double cut = frame.tolerances().degree_tol * scale;
    int ell = 1;
    for (int k = 0; k < frame.dimension(); ++k)
        if (std::abs(c(k)) > cut) ell = std::max(ell, frame.degree_of(k));
    return ell;
}

}  // namespace graded
