#pragma once

#include "graded/curve.hpp"
#include "graded/frame.hpp"
#include "graded/numerics.hpp"

#include <random>
#include <vector>

namespace testutil {

using graded::Mat;
using graded::Vec;

inline Vec vec(std::initializer_list<double> v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

inline std::vector<Vec> random_points(int dim, int count, unsigned seed, double scale = 2.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<Vec> pts;
    for (int c = 0; c < count; ++c) {
        Vec p(dim);
        for (int i = 0; i < dim; ++i) p(i) = u(rng);
        pts.push_back(p);
    }
    return pts;
}

// Horizontal lift of the planar circle (cos s, sin s) in the X = dx - (y/2)dt, Y = dy + (x/2)dt frame.
inline graded::Curve heisenberg_circle(double a = 0.0, double b = 1.0) {
    return graded::Curve(
        "circle", a, b, [](double s) { return vec({std::cos(s), std::sin(s), 0.5 * s}); },
        [](double s) { return vec({-std::sin(s), std::cos(s), 0.5}); });
}

}  // namespace testutil
