#pragma once

#include "graded/admissibility.hpp"
#include "graded/curve.hpp"
#include "graded/frame.hpp"

#include <cstdint>
#include <random>

namespace graded {

// Smooth bump controls supported strictly inside [a, b].
ControlField random_bump_control(int k, std::mt19937_64& rng, double a, double b);

// Horizontal lift in the heisenberg(1) frame of a planar polynomial curve with x' >= 1/2 on [0, 1],
// so the velocity never vanishes and the curve has no characteristic points.
Curve random_horizontal_heisenberg(std::mt19937_64& rng);

// G(p) = L(p) L(p)^T with L lower triangular, unit-ish diagonal and smooth off-diagonal terms of size <= amplitude.
MetricFn random_spd_metric(int n, std::mt19937_64& rng, double amplitude = 0.3);

}  // namespace graded
