#pragma once

#include "graded/numerics.hpp"
#include "graded/polynomial.hpp"
#include "graded/tolerances.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace graded {

using PointFn = std::function<Vec(const Vec&)>;
using JacobianFn = std::function<Mat(const Vec&)>;
using MetricFn = std::function<Mat(const Vec&)>;

// Dense n x n x n array; (i, j, k) is the X_k coefficient of [X_i, X_j] for structure functions.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), d_(static_cast<std::size_t>(n) * n * n, 0.0) {}
    int size() const { return n_; }
    double& operator()(int i, int j, int k) { return d_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }
    double operator()(int i, int j, int k) const { return d_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }

private:
    int n_ = 0;
    std::vector<double> d_;
};

struct VectorFieldSpec {
    std::string label;
    PointFn value;
    JacobianFn jacobian;  // empty: central finite differences

    Vec evaluate(const Vec& p) const;
    Mat jacobian_at(const Vec& p) const;
    Mat finite_difference_jacobian(const Vec& p) const;
    bool has_analytic_jacobian() const { return static_cast<bool>(jacobian); }
};

VectorFieldSpec polynomial_field(std::string label, std::vector<MultiPolynomial> components);
VectorFieldSpec constant_field(std::string label, const Vec& value);

// Coordinate expression JY(p) X(p) - JX(p) Y(p) of [X, Y].
Vec lie_bracket(const VectorFieldSpec& x, const VectorFieldSpec& y, const Vec& p);

class AdaptedFrame {
public:
    // metric: frame-component Gram matrix as a function of the point; empty means the frame is orthonormal.
    AdaptedFrame(std::string name, std::vector<VectorFieldSpec> fields, std::vector<int> growth_vector,
                 MetricFn metric = {}, Tolerances tol = {});

    const std::string& name() const;
    int dimension() const;
    const std::vector<int>& growth_vector() const;
    int layers() const;
    int degree_of(int j) const;  // 0-based field index -> degree in 1..s
    int n_at(int d) const;       // n_0 = 0, n_d = n for d >= s
    const VectorFieldSpec& field(int j) const;
    const std::vector<VectorFieldSpec>& fields() const;
    const Tolerances& tolerances() const;

    bool orthonormal() const;
    Mat metric_at(const Vec& p) const;
    Mat matrix_at(const Vec& p) const;  // columns X_j(p); throws DegenerateFrameError
    Vec expansion(const Vec& p, const Vec& v) const;
    // Coefficients in the metric-orthonormal adapted frame obtained by flag-respecting Gram-Schmidt.
    Vec orthonormal_coefficients(const Vec& p, const Vec& v) const;
    Tensor3 structure_functions(const Vec& p) const;

    AdaptedFrame orthonormalized() const;
    AdaptedFrame with_metric(MetricFn metric, std::string name = {}) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

inline Tensor3 structure_functions(const AdaptedFrame& frame, const Vec& p) { return frame.structure_functions(p); }

struct FiltrationPair {
    int layer_i = 0, layer_j = 0;
    double worst = 0.0;  // largest |component| of degree > layer_i + layer_j
    Vec worst_point;
    bool flagged = false;
};

struct FiltrationReport {
    std::vector<FiltrationPair> pairs;
    double worst() const;
    bool ok() const;
};

FiltrationReport verify_filtration(const AdaptedFrame& frame, const std::vector<Vec>& sample_points);

int degree_of_vector(const AdaptedFrame& frame, const Vec& p, const Vec& v);

}  // namespace graded
