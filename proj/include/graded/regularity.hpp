#pragma once

#include "graded/admissibility.hpp"
#include "graded/tolerances.hpp"

#include <optional>
#include <string>
#include <vector>

namespace graded {

enum class Classification { Regular, Singular };

std::string to_string(Classification c);

struct StrongRegularity {
    bool value = false;
    std::vector<int> failing_nodes;
    std::string diagnostic;
};

// Lambda(t) = Gamma^T D(t), stored as column vectors.
struct SingularCovector {
    Vec gamma;
    std::vector<Vec> lambda;
    double ode_residual = 0.0;           // max |Lambda' - Lambda B|
    double annihilation_residual = 0.0;  // max |Lambda A|
    double min_norm = 0.0, max_norm = 0.0;
};

struct RegularityReport {
    double a = 0.0, b = 0.0;
    Mat gram;  // int_a^b (DA)(DA)^T dt
    int gram_rank = 0;
    Vec singular_values;
    Classification classification = Classification::Singular;
    bool strongly_regular = false;
    std::vector<int> failing_nodes;
    std::string diagnostic;
    std::optional<SingularCovector> covector;
};

Mat holonomy_gram(const AdmissibilitySystem& system);

RegularityReport classify(const AdmissibilitySystem& system, const Tolerances& tol = {});

StrongRegularity strongly_regular(const AdmissibilitySystem& system, const Tolerances& tol = {});

// Empty when the Gram matrix has full rank.
std::optional<SingularCovector> singular_covector(const AdmissibilitySystem& system, const Tolerances& tol = {});

struct MetricIndependence {
    Classification first = Classification::Singular;
    Classification second = Classification::Singular;
    bool independent() const { return first == second; }
};

// Metrics are frame-component Gram matrices; an empty function means the frame itself is orthonormal.
MetricIndependence metric_independence_check(const Curve& curve, const AdaptedFrame& frame, int d,
                                             const MetricFn& metric_g, const MetricFn& metric_h, int grid_size = 1001,
                                             const Tolerances& tol = {});

}  // namespace graded
