#pragma once

#include "graded/admissibility.hpp"
#include "graded/curve.hpp"
#include "graded/frame.hpp"
#include "graded/tolerances.hpp"

#include <string>
#include <vector>

namespace graded {

// gamma(i, j, k) = <nabla_{X_i} X_j, X_k> of the orthonormalized frame (Koszul formula).
Tensor3 connection_table(const AdaptedFrame& frame, const Vec& p);

// ctilde(l, i, j) = -<nabla_{X_l} X_j, X_i> + <X_l, nabla_{X_i} X_j>.
Tensor3 cell_coefficients(const AdaptedFrame& frame, const Vec& p);

struct AlphaBeta {
    std::vector<double> t;
    std::vector<Vec> alpha;  // length n_d, zero below n_{d-1}
    std::vector<Vec> beta;   // length n
    int n_d = 0;
    Vec beta_h(std::size_t node) const { return beta[node].head(n_d); }
    Vec beta_v(std::size_t node) const { return beta[node].tail(beta[node].size() - n_d); }
};

AlphaBeta alpha_beta(const Curve& curve, const AdaptedFrame& frame, int d, const Grid& grid);

// Orthonormal-frame components of the first variation field H at each grid node.
std::vector<Vec> first_variation_field(const Curve& curve, const AdaptedFrame& frame, int d, const Grid& grid);

struct GeodesicResidual {
    Vec fitted_k;                // length n - n_d
    std::vector<Vec> residual;   // length n_d per node
    double max_norm = 0.0;
    double density_deviation = 0.0;  // max |theta_d - 1|
};

// Requires theta_d = 1 within tol.density_tol; system must be built on the same curve, degree and grid.
GeodesicResidual geodesic_residual(const Curve& curve, const AdaptedFrame& frame, int d,
                                   const AdmissibilitySystem& system, const Tolerances& tol = {});

// Unit-speed solution of -nabla_{g'} g' = 2k J(g') in the first Heisenberg group, J(X) = Y, J(Y) = -X.
// The planar projection has curvature 2|k|; the fitted geodesic multiplier equals 2k.
Curve heisenberg_geodesic(double k, const Vec& p0, const Vec& v0, double t_end, int nodes = 4001);

struct VariationCheck {
    double finite_difference = 0.0;  // central difference of L_d along curve + s V
    double predicted = 0.0;          // quadrature of <V, H>
    double relative_error() const;
};

// V is a compactly supported chart-coordinate field along the curve (position = V, velocity = V').
VariationCheck variation_consistency(const Curve& curve, const AdaptedFrame& frame, int d, const Curve& v,
                                     double ds = 1e-4, int quad_nodes = 1001);

}  // namespace graded
