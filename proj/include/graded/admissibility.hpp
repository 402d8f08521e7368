#pragma once

#include "graded/curve.hpp"
#include "graded/frame.hpp"
#include "graded/numerics.hpp"

#include <functional>
#include <vector>

namespace graded {

using MatrixFn = std::function<Mat(double)>;

// Matrices A(t) ((n-k) x k) and B(t) ((n-k) x (n-k)) of F' = -B F - A G, with D' = D B, D(a) = I.
// A and B are stored at grid nodes and midpoints so the RK4 substeps use exact values.
class AdmissibilitySystem {
public:
    AdmissibilitySystem(Grid grid, int k, int vertical, std::vector<Mat> a_half, std::vector<Mat> b_half);

    static AdmissibilitySystem from_samplers(const Grid& grid, int k, int vertical, const MatrixFn& a,
                                             const MatrixFn& b);

    const Grid& grid() const { return grid_; }
    int k() const { return k_; }
    int vertical() const { return m_; }  // n - k
    const Mat& A(int node) const { return a_[2 * static_cast<std::size_t>(node)]; }
    const Mat& B(int node) const { return b_[2 * static_cast<std::size_t>(node)]; }
    const Mat& D(int node) const { return d_[static_cast<std::size_t>(node)]; }
    const std::vector<Mat>& D() const { return d_; }
    // Lookup at a node or midpoint (the only times visited by the integrator).
    const Mat& A_at(double t) const;
    const Mat& B_at(double t) const;

    // max_t |det D(t) - exp(int_a^t tr B)| / exp(int_a^t tr B)
    double determinant_identity_error() const;

private:
    std::size_t half_index(double t) const;
    Grid grid_;
    int k_, m_;
    std::vector<Mat> a_, b_, d_;
};

std::vector<Mat> fundamental_matrix(const Grid& grid, const MatrixFn& b_at);

AdmissibilitySystem build_system(const Curve& curve, const AdaptedFrame& frame, int d, int grid_size);
AdmissibilitySystem build_system(const Curve& curve, const AdaptedFrame& frame, int d, int grid_size, double a,
                                 double b);

struct ControlField {
    std::function<Vec(double)> g;  // horizontal components g_1..g_k
    bool compact = true;
    Vec operator()(double t) const { return g(t); }
};

struct VerticalField {
    std::vector<double> t;
    std::vector<Vec> f;  // components f_{k+1}..f_n at each node
};

VerticalField solve_admissibility(const AdmissibilitySystem& system, const ControlField& g, const Vec& f_a);

struct HolonomyResult {
    Vec value;
    bool support_warning = false;
};

HolonomyResult holonomy(const AdmissibilitySystem& system, const ControlField& g);

// Per-node F' + B F + A G, with F' from five-point differences of the node samples.
std::vector<Vec> admissibility_residual(const AdmissibilitySystem& system, const ControlField& g,
                                        const VerticalField& f);

double max_norm(const std::vector<Vec>& samples);

}  // namespace graded
