#include "graded/regularity.hpp"

#include "graded/errors.hpp"

#include <algorithm>
#include <cmath>

namespace graded {

std::string to_string(Classification c) { return c == Classification::Regular ? "REGULAR" : "SINGULAR"; }

Mat holonomy_gram(const AdmissibilitySystem& sys) {
    const Grid& grid = sys.grid();
    const int m = sys.vertical();
    if (m == 0) return Mat(0, 0);
    std::vector<Mat> integrand(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const Mat da = sys.D(i) * sys.A(i);
        integrand[i] = da * da.transpose();
    }
    return simpson(integrand, grid.step());
}

StrongRegularity strongly_regular(const AdmissibilitySystem& sys, const Tolerances& tol) {
    StrongRegularity out;
    const int m = sys.vertical(), k = sys.k();
    if (m == 0) {
        out.value = true;
        out.diagnostic = "no vertical directions";
        return out;
    }
    for (int i = 0; i < sys.grid().size(); ++i)
        if (rank_by_svd(sys.A(i), tol.rank_tol, tol.rank_abs_tol).rank < m) out.failing_nodes.push_back(i);
    out.value = out.failing_nodes.empty();
    if (m > k) out.diagnostic = "n-k > k: rank A(t) <= k < n-k at every node";
    else if (!out.value) out.diagnostic = "rank A(t) < n-k at " + std::to_string(out.failing_nodes.size()) + " nodes";
    return out;
}

namespace {

SingularCovector covector_from(const AdmissibilitySystem& sys, const Vec& gamma) {
    SingularCovector cov;
    cov.gamma = gamma;
    const Grid& grid = sys.grid();
    cov.lambda.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) cov.lambda[i] = sys.D(i).transpose() * gamma;
    const std::vector<Vec> dl = derivative(cov.lambda, grid.step());
    cov.min_norm = INFINITY;
    for (int i = 0; i < grid.size(); ++i) {
        const Vec ode = dl[i] - sys.B(i).transpose() * cov.lambda[i];
        const Vec ann = sys.A(i).transpose() * cov.lambda[i];
        cov.ode_residual = std::max(cov.ode_residual, ode.cwiseAbs().maxCoeff());
        if (ann.size()) cov.annihilation_residual = std::max(cov.annihilation_residual, ann.cwiseAbs().maxCoeff());
        const double nrm = cov.lambda[i].norm();
        cov.min_norm = std::min(cov.min_norm, nrm);
        cov.max_norm = std::max(cov.max_norm, nrm);
    }
    return cov;
}

}  // namespace

std::optional<SingularCovector> singular_covector(const AdmissibilitySystem& sys, const Tolerances& tol) {
    if (sys.vertical() == 0) return std::nullopt;
    const Mat gram = holonomy_gram(sys);
    if (rank_by_svd(gram, tol.gram_rank_tol, tol.gram_abs_tol).rank == sys.vertical()) return std::nullopt;
    return covector_from(sys, null_direction(gram));
}

RegularityReport classify(const AdmissibilitySystem& sys, const Tolerances& tol) {
    RegularityReport rep;
    rep.a = sys.grid().a();
    rep.b = sys.grid().b();
    rep.gram = holonomy_gram(sys);
    const RankResult r = rank_by_svd(rep.gram, tol.gram_rank_tol, tol.gram_abs_tol);
    rep.gram_rank = r.rank;
    rep.singular_values = r.singular_values;
    rep.classification = r.rank == sys.vertical() ? Classification::Regular : Classification::Singular;
    const StrongRegularity sr = strongly_regular(sys, tol);
    rep.strongly_regular = sr.value;
    rep.failing_nodes = sr.failing_nodes;
    rep.diagnostic = sr.diagnostic;
    if (rep.classification == Classification::Singular) rep.covector = covector_from(sys, null_direction(rep.gram));
    return rep;
}

MetricIndependence metric_independence_check(const Curve& curve, const AdaptedFrame& frame, int d,
                                             const MetricFn& metric_g, const MetricFn& metric_h, int grid_size,
                                             const Tolerances& tol) {
    MetricIndependence out;
    const AdaptedFrame fg = frame.with_metric(metric_g).orthonormalized();
    const AdaptedFrame fh = frame.with_metric(metric_h).orthonormalized();
    out.first = classify(build_system(curve, fg, d, grid_size), tol).classification;
    out.second = classify(build_system(curve, fh, d, grid_size), tol).classification;
    return out;
}

}  // namespace graded
