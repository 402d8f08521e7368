#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

namespace graded {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Uniform grid on [a, b]. Simpson-based routines additionally require an odd node count.
class Grid {
public:
    Grid(double a, double b, int node_count);

    double a() const { return a_; }
    double b() const { return b_; }
    int size() const { return n_; }
    double step() const { return h_; }
    double node(int i) const;
    std::vector<double> nodes() const;
    bool simpson_compatible() const { return n_ >= 3 && n_ % 2 == 1; }

private:
    double a_, b_;
    int n_;
    double h_;
};

using OdeRhs = std::function<Vec(double, const Vec&)>;

// Classical RK4 with one step per grid interval. Throws DivergenceError on non-finite state.
std::vector<Vec> integrate_ode(const OdeRhs& rhs, const Vec& state0, const Grid& grid);

double simpson(const std::vector<double>& values, double h);
Mat simpson(const std::vector<Mat>& values, double h);

// Fourth-order running integral: out[i] approximates the integral from node 0 to node i.
std::vector<double> cumulative_integral(const std::vector<double>& values, double h);
std::vector<Mat> cumulative_integral(const std::vector<Mat>& values, double h);

// Fourth-order five-point derivative with one-sided stencils at the ends (needs >= 5 samples).
std::vector<double> derivative(const std::vector<double>& values, double h);
std::vector<Vec> derivative(const std::vector<Vec>& values, double h);

struct RankResult {
    int rank = 0;
    Vec singular_values;
};

// Counts singular values above max(rel_tol * sigma_max, abs_tol).
RankResult rank_by_svd(const Mat& m, double rel_tol, double abs_tol = 0.0);

Vec least_squares(const Mat& design, const Vec& target);

// Right singular vector of the smallest singular value, first nonzero entry positive.
Vec null_direction(const Mat& m);

// Eliminates the error terms c_1 h^p + c_2 h^(p+q) + ... from values sampled at params.
double richardson(const std::vector<double>& values, const std::vector<double>& params,
                  double leading_order, double order_step);

// Natural cubic spline through (x_i, y_i), x strictly increasing.
class CubicSpline {
public:
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double value(double t) const;
    double derivative(double t) const;
    int segments() const { return static_cast<int>(x_.size()) - 1; }
    double knot(int i) const { return x_[i]; }
    // Coefficients (c0, c1, c2, c3) of y on segment i in powers of (t - x_i).
    std::array<double, 4> segment(int i) const;

private:
    int locate(double t) const;
    std::vector<double> x_, y_, m_;  // m_ holds second derivatives at knots
};

// Piecewise cubic Hermite interpolant of vector samples with given slopes.
class HermiteInterpolant {
public:
    HermiteInterpolant(std::vector<double> t, std::vector<Vec> values, std::vector<Vec> slopes);
    Vec value(double t) const;
    Vec derivative(double t) const;
    double front() const { return t_.front(); }
    double back() const { return t_.back(); }

private:
    int locate(double t) const;
    std::vector<double> t_;
    std::vector<Vec> y_, dy_;
};

}  // namespace graded
