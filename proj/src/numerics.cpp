#include "graded/numerics.hpp"

#include "graded/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace graded {

Grid::Grid(double a, double b, int node_count) : a_(a), b_(b), n_(node_count) {
    if (node_count < 2) throw InputError("grid needs at least 2 nodes, got " + std::to_string(node_count));
    if (!(b > a)) throw InputError("grid interval must satisfy a < b");
    h_ = (b - a) / (node_count - 1);
}

double Grid::node(int i) const {
    if (i == n_ - 1) return b_;
    return a_ + h_ * i;
}

std::vector<double> Grid::nodes() const {
    std::vector<double> t(n_);
    for (int i = 0; i < n_; ++i) t[i] = node(i);
    return t;
}

std::vector<Vec> integrate_ode(const OdeRhs& rhs, const Vec& state0, const Grid& grid) {
    std::vector<Vec> out;
    out.reserve(grid.size());
    out.push_back(state0);
    const double h = grid.step();
    Vec y = state0;
    for (int i = 0; i + 1 < grid.size(); ++i) {
        const double t = grid.node(i);
        const Vec k1 = rhs(t, y);
        const Vec k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
        const Vec k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
        const Vec k4 = rhs(t + h, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!y.allFinite()) {
            throw DivergenceError("ODE state became non-finite at node " + std::to_string(i + 1) +
                                  " (t = " + std::to_string(grid.node(i + 1)) + ")");
        }
        out.push_back(y);
    }
    return out;
}

namespace {

void require_simpson(std::size_t n) {
    if (n < 3 || n % 2 == 0)
        throw InputError("Simpson quadrature needs an odd node count >= 3, got " + std::to_string(n));
}

template <class T>
T simpson_impl(const std::vector<T>& f, double h) {
    require_simpson(f.size());
    const std::size_t n = f.size();
    T odd = f[1];
    for (std::size_t i = 3; i < n - 1; i += 2) odd += f[i];
    T even = f[0] * 0.0;
    for (std::size_t i = 2; i < n - 1; i += 2) even += f[i];
    return (h / 3.0) * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
}

template <class T>
std::vector<T> cumulative_impl(const std::vector<T>& f, double h) {
    const std::size_t n = f.size();
    std::vector<T> out(n, f[0] * 0.0);
    if (n < 2) return out;
    if (n < 4) {
        for (std::size_t i = 1; i < n; ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
        return out;
    }
    const double c = h / 24.0;
    out[1] = c * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    for (std::size_t i = 1; i + 2 < n; ++i)
        out[i + 1] = out[i] + c * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
    out[n - 1] = out[n - 2] + c * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]);
    return out;
}

template <class T>
std::vector<T> derivative_impl(const std::vector<T>& f, double h) {
    const std::size_t n = f.size();
    if (n < 5) throw InputError("five-point derivative needs at least 5 samples");
    std::vector<T> d(n, f[0] * 0.0);
    const double c = 1.0 / (12.0 * h);
    d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for (std::size_t i = 2; i + 2 < n; ++i) d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    d[n - 2] = c * (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]);
    d[n - 1] = c * (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]);
    return d;
}

}  // namespace

double simpson(const std::vector<double>& values, double h) { return simpson_impl(values, h); }

Mat simpson(const std::vector<Mat>& values, double h) {
    require_simpson(values.size());
    const std::size_t n = values.size();
    Mat odd = Mat::Zero(values[0].rows(), values[0].cols());
    Mat even = odd;
    for (std::size_t i = 1; i < n - 1; i += 2) odd += values[i];
    for (std::size_t i = 2; i < n - 1; i += 2) even += values[i];
    return (h / 3.0) * (values[0] + values[n - 1] + 4.0 * odd + 2.0 * even);
}

std::vector<double> cumulative_integral(const std::vector<double>& values, double h) {
    return cumulative_impl(values, h);
}

std::vector<Mat> cumulative_integral(const std::vector<Mat>& values, double h) {
    return cumulative_impl(values, h);
}

std::vector<double> derivative(const std::vector<double>& values, double h) {
    return derivative_impl(values, h);
}

std::vector<Vec> derivative(const std::vector<Vec>& values, double h) { return derivative_impl(values, h); }

RankResult rank_by_svd(const Mat& m, double rel_tol, double abs_tol) {
    RankResult r;
    if (m.size() == 0) {
        r.singular_values = Vec(0);
        return r;
    }
    Eigen::JacobiSVD<Mat> svd(m);
    r.singular_values = svd.singularValues();
    const double smax = r.singular_values.size() ? r.singular_values(0) : 0.0;
    const double cut = std::max(rel_tol * smax, abs_tol);
    for (Eigen::Index i = 0; i < r.singular_values.size(); ++i)
        if (r.singular_values(i) > cut && r.singular_values(i) > 0.0) ++r.rank;
    return r;
}

Vec least_squares(const Mat& design, const Vec& target) {
    if (design.cols() == 0) return Vec(0);
    return design.colPivHouseholderQr().solve(target);
}

Vec null_direction(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    Vec v = svd.matrixV().col(m.cols() - 1);
    const double scale = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12 * scale) {
            if (v(i) < 0) v = -v;
            break;
        }
    }
    return v / v.norm();
}

double richardson(const std::vector<double>& values, const std::vector<double>& params,
                  double leading_order, double order_step) {
    const std::size_t m = values.size();
    if (m == 0 || params.size() != m) throw InputError("richardson needs matching value and parameter lists");
    double hmax = 0.0;
    for (double p : params) hmax = std::max(hmax, std::abs(p));
    if (hmax == 0.0) throw InputError("richardson parameters must not all vanish");
    Mat design(m, m);
    Vec rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double h = params[i] / hmax;
        design(i, 0) = 1.0;
        for (std::size_t j = 1; j < m; ++j)
            design(i, j) = std::pow(h, leading_order + order_step * static_cast<double>(j - 1));
        rhs(i) = values[i];
    }
    return design.fullPivLu().solve(rhs)(0);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw InputError("spline needs at least two matching knots");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw InputError("spline knots must be strictly increasing");
    m_.assign(n, 0.0);
    if (n == 2) return;
    // Thomas algorithm for the natural-spline tridiagonal system.
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
        const double a = h0, b = 2.0 * (h0 + h1), cc = h1;
        const double r = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        const double denom = b - a * c[i - 1];
        c[i] = cc / denom;
        d[i] = (r - a * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = d[i] - c[i] * m_[i + 1];
        if (i == 1) break;
    }
}

int CubicSpline::locate(double t) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    int i = static_cast<int>(it - x_.begin()) - 1;
    return std::clamp(i, 0, segments() - 1);
}

std::array<double, 4> CubicSpline::segment(int i) const {
    const double h = x_[i + 1] - x_[i];
    const double c0 = y_[i];
    const double c1 = (y_[i + 1] - y_[i]) / h - h * (2.0 * m_[i] + m_[i + 1]) / 6.0;
    const double c2 = 0.5 * m_[i];
    const double c3 = (m_[i + 1] - m_[i]) / (6.0 * h);
    return {c0, c1, c2, c3};
}

double CubicSpline::value(double t) const {
    const int i = locate(t);
    const auto c = segment(i);
    const double s = t - x_[i];
    return c[0] + s * (c[1] + s * (c[2] + s * c[3]));
}

double CubicSpline::derivative(double t) const {
    const int i = locate(t);
    const auto c = segment(i);
    const double s = t - x_[i];
    return c[1] + s * (2.0 * c[2] + 3.0 * s * c[3]);
}

HermiteInterpolant::HermiteInterpolant(std::vector<double> t, std::vector<Vec> values, std::vector<Vec> slopes)
    : t_(std::move(t)), y_(std::move(values)), dy_(std::move(slopes)) {
    if (t_.size() < 2 || y_.size() != t_.size() || dy_.size() != t_.size())
        throw InputError("Hermite interpolation needs at least two samples with slopes");
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1])) throw InputError("sample times must be strictly increasing");
}

int HermiteInterpolant::locate(double t) const {
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    int i = static_cast<int>(it - t_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(t_.size()) - 2);
}

Vec HermiteInterpolant::value(double t) const {
    const int i = locate(t);
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * y_[i] + h10 * h * dy_[i] + h01 * y_[i + 1] + h11 * h * dy_[i + 1];
}

Vec HermiteInterpolant::derivative(double t) const {
    const int i = locate(t);
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double d00 = 6 * s * s - 6 * s, d10 = 3 * s * s - 4 * s + 1;
    const double d01 = -6 * s * s + 6 * s, d11 = 3 * s * s - 2 * s;
    return (d00 * y_[i] + d01 * y_[i + 1]) / h + d10 * dy_[i] + d11 * dy_[i + 1];
}

}  // namespace graded
