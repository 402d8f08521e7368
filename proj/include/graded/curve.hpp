#pragma once

#include "graded/frame.hpp"
#include "graded/numerics.hpp"
#include "graded/polynomial.hpp"

#include <functional>
#include <string>
#include <vector>

namespace graded {

using CurveFn = std::function<Vec(double)>;

class Curve {
public:
    Curve(std::string label, double a, double b, CurveFn position, CurveFn velocity = {});

    const std::string& label() const { return label_; }
    double a() const { return a_; }
    double b() const { return b_; }
    Vec position(double t) const;
    Vec velocity(double t) const;  // analytic if supplied, otherwise central differences
    Vec finite_difference_velocity(double t) const;
    bool has_analytic_velocity() const { return static_cast<bool>(vel_); }

private:
    std::string label_;
    double a_, b_;
    CurveFn pos_, vel_;
};

Curve polynomial_curve(std::string label, std::vector<Polynomial> components, double a, double b);

// Cubic Hermite through (t_i, p_i) with five-point finite-difference slopes.
Curve sampled_curve(std::string label, std::vector<double> t, std::vector<Vec> points);

// Cubic Hermite through (t_i, p_i) with given velocities.
Curve hermite_curve(std::string label, std::vector<double> t, std::vector<Vec> points, std::vector<Vec> velocities);

// u -> curve(phi(u)) on [u0, u1]; phi must be increasing and map onto a subinterval of the domain.
Curve reparameterize(const Curve& curve, std::function<double(double)> phi, std::function<double(double)> dphi,
                     double u0, double u1);

// Reparameterization by the degree-d length, so that theta_d is identically 1.
Curve arc_length_reparameterize(const Curve& curve, const AdaptedFrame& frame, int d, int table_nodes = 4001);

struct DegreeProfile {
    std::vector<double> grid;
    std::vector<int> pointwise_degree;
    int curve_degree = 0;
    std::vector<int> singular_nodes;  // indices with pointwise degree < curve_degree
};

DegreeProfile degree_profile(const Curve& curve, const AdaptedFrame& frame, int grid_size);

double length_density(const Curve& curve, const AdaptedFrame& frame, int d, double t);

double length_Ld(const Curve& curve, const AdaptedFrame& frame, int d, double a, double b, int quad_nodes = 1001);

// Length under the blow-up metric g_r, in which X_j has squared norm r^{-(deg X_j - 1)}.
double riemannian_length_gr(const Curve& curve, const AdaptedFrame& frame, double r, double a, double b,
                            int quad_nodes = 1001);

}  // namespace graded
