#pragma once

#include "graded/frame.hpp"

namespace graded::frames {

// Coordinates (x_1..x_n, y_1..y_n, t); X_i = d/dx_i - (y_i/2) d/dt, Y_i = d/dy_i + (x_i/2) d/dt, [X_i, Y_i] = T.
AdaptedFrame heisenberg(int n = 1);
// X = d/dx + y d/dt, Y = d/dy - x d/dt, T = d/dt, so [X, Y] = -2T.
AdaptedFrame heisenberg_contact();
// X_1 = d/dx_1, X_2 = d/dx_2 + x_1 d/dx_3 + (x_1^2/2) d/dx_4, X_3 = [X_1, X_2], X_4 = [X_1, X_3].
AdaptedFrame engel();
// Engel fields with X_3 and X_4 swapped, so [X_1, X_2] escapes the declared second layer.
AdaptedFrame engel_mislabeled();
// Growth (2,3,4,5): X_2 = d/dx_5 + x_1 d/dx_2 + (x_1^2/2) d/dx_3 + (x_1^3/6) d/dx_4 and iterated brackets with X_1.
AdaptedFrame r5_degree2();
// Growth (3,4,5): rank-3 distribution with X_3 = d/dx_5 central.
AdaptedFrame r5_rank3();
// Coordinates (x, y, z, t), growth (1,2,3,4), X_2 = d/dt + x d/dy + (x^2/2) d/dz.
AdaptedFrame kolmogorov();
// Abelian coordinate frame of R^n with first layer spanned by the first k coordinate fields.
AdaptedFrame euclidean_split(int n, int k);

}  // namespace graded::frames
