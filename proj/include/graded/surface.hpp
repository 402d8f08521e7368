#pragma once

#include "graded/curve.hpp"
#include "graded/frame.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace graded {

// Surface in the first Heisenberg group (frame X, Y, T orthonormal, [X, Y] = T), described by a
// two-dimensional chart with an exact embedding, the ambient fields Z and S, and the S-flow in the chart.
struct Surface {
    std::string name;
    AdaptedFrame ambient;
    VectorFieldSpec z, s;                 // ambient coordinate expressions
    PointFn embedding;                    // chart -> R^3
    JacobianFn embedding_jacobian;        // 3 x 2
    VectorFieldSpec s_chart;              // S pushed to chart coordinates
    std::optional<AdaptedFrame> chart_frame;  // (Z, S) with growth (1, 2) when Z is tangent
    std::function<bool(const Vec&)> in_domain;  // chart-side restriction (e.g. off the equator)
};

Surface vertical_plane();
Surface characteristic_plane();
Surface pansu_sphere();  // upper hemisphere, chart (rho, theta)

// Norm of the horizontal projection of the unit normal at a chart point.
double horizontal_normal_norm(const Surface& surface, const Vec& chart_point);

struct SurfaceFrame {
    Vec z, s;  // components in the ambient frame (X, Y, T)
};

// Throws DomainError at characteristic points.
SurfaceFrame surface_frame(const Surface& surface, const Vec& chart_point);

// <[Z, S], S> at the embedded chart point.
double surface_bracket(const Surface& surface, const Vec& chart_point);

struct SurfaceGeodesic {
    double bracket = 0.0;          // <[Z, S], S>
    bool every_curve_critical = false;
    std::optional<Curve> chart_curve;    // integral curve of S through the point
    std::optional<Curve> ambient_curve;
};

SurfaceGeodesic surface_geodesic_field(const Surface& surface, const Vec& chart_point, double span,
                                       int nodes = 2001, double zero_tol = 1e-8);

// Integral curve of S in the chart starting at the given point, over [0, span].
Curve s_flow(const Surface& surface, const Vec& chart_point, double span, int nodes = 2001);

// Euclidean length in R^3 of the embedded chart curve.
double euclidean_length(const Surface& surface, const Curve& chart_curve, int quad_nodes = 2001);

struct LimitResult {
    std::vector<double> params;
    std::vector<double> values;
    double limit = 0.0;
};

// Euclidean length of the S-integral curve at radius rho over the parameter interval [0, 2 pi].
LimitResult characteristic_plane_limit(const std::vector<double>& rho_list, int nodes = 2001);

struct PansuLimit {
    LimitResult half_length;  // s-bar per rho_0
    double s_bar = 0.0;
    double two_s_bar = 0.0;
};

// s-bar(rho_0) = parameter length of the upper geodesic from rho_0 to the equator.
double pansu_half_length(double rho0, double guard = 1e-4, int nodes = 2001);
PansuLimit pansu_limit(const std::vector<double>& rho_list = {1e-2, 1e-3, 1e-4}, double guard = 1e-4,
                       int nodes = 2001);

struct MinimizerReport {
    double two_segment_length = 0.0;
    double min_competitor = 0.0;
    int trials = 0;
    int violations = 0;  // competitors shorter than the two-segment path by more than the slack
    double slack = 1e-9;
};

// p, q are (x, t) points of the plane {y = 0}.
MinimizerReport vertical_plane_minimizer_test(const Vec& p, const Vec& q, int trial_count, std::uint64_t seed,
                                              double slack = 1e-9);

// L_2 in the plane {y = 0} of a chart curve made of cubic spline segments, integrated exactly
// (Simpson on each sign-constant piece of t').
double vertical_plane_spline_length(const CubicSpline& x, const CubicSpline& t);

}  // namespace graded
