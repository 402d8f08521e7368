#include "graded/analysis.hpp"

#include "graded/admissibility.hpp"
#include "graded/errors.hpp"
#include "graded/generators.hpp"
#include "graded/regularity.hpp"
#include "graded/variation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace graded {

using nlohmann::json;

const std::vector<std::string>& analysis_names() {
    static const std::vector<std::string> names{"degree",   "length",   "blowup",    "admissibility", "regularity",
                                                "covector", "geodesic", "variation", "limits"};
    return names;
}

namespace {

constexpr int kDefaultGrid = 1001;

constexpr const char* kIntegrabilityAssumption =
    "admissible vector fields are assumed integrable into admissible variations; only the regularity hypothesis "
    "is checked numerically";

int grid_of(const RunOptions& o) { return o.grid.value_or(kDefaultGrid); }

const Curve& need_curve(const AnalysisInput& in, const std::string& analysis) {
    if (!in.curve) throw InputError("analysis '" + analysis + "' needs a curve");
    return *in.curve;
}

Curve restricted(const Curve& c, double a, double b) {
    if (a < c.a() || b > c.b() || !(b > a))
        throw InputError("interval lies outside the domain of curve '" + c.label() + "'");
    if (a == c.a() && b == c.b()) return c;
    return Curve(c.label(), a, b, [c](double t) { return c.position(t); }, [c](double t) { return c.velocity(t); });
}

int degree_for(const AnalysisInput& in, const RunOptions& o) {
    if (in.degree) return *in.degree;
    return degree_profile(restricted(need_curve(in, "degree"), in.a, in.b), in.frame, grid_of(o)).curve_degree;
}

json tolerance_json(const Tolerances& t) {
    return {{"rank_tol", t.rank_tol},           {"rank_abs_tol", t.rank_abs_tol}, {"degree_tol", t.degree_tol},
            {"bracket_tol", t.bracket_tol},     {"gram_rank_tol", t.gram_rank_tol}, {"gram_abs_tol", t.gram_abs_tol},
            {"ode_vs_quad_tol", t.ode_vs_quad_tol}, {"adm_tol", t.adm_tol},      {"sing_tol", t.sing_tol},
            {"density_tol", t.density_tol}};
}

// Smooth field supported inside [lo, hi] with random coordinate amplitudes.
Curve random_bump_field(int dim, double a, double b, std::mt19937_64& rng, double amplitude) {
    std::uniform_real_distribution<double> u(-1, 1), pos(0.05, 0.3);
    Vec amp(dim);
    for (int i = 0; i < dim; ++i) amp(i) = amplitude * u(rng);
    const double lo = a + pos(rng) * (b - a), hi = b - pos(rng) * (b - a), f = 3 * u(rng);
    const double w = M_PI / (hi - lo);
    return Curve(
        "V", a, b,
        [=](double t) {
            if (t <= lo || t >= hi) return Vec(Vec::Zero(dim));
            return Vec(amp * std::pow(std::sin(w * (t - lo)), 4) * std::cos(f * t));
        },
        [=](double t) {
            if (t <= lo || t >= hi) return Vec(Vec::Zero(dim));
            const double s = std::sin(w * (t - lo)), c = std::cos(w * (t - lo));
            return Vec(amp * (4 * s * s * s * c * w * std::cos(f * t) - std::pow(s, 4) * f * std::sin(f * t)));
        });
}

json degree_analysis(const AnalysisInput& in, const RunOptions& o, CsvTables* csv) {
    const Curve c = restricted(need_curve(in, "degree"), in.a, in.b);
    const DegreeProfile p = degree_profile(c, in.frame, grid_of(o));
    json singular = json::array();
    for (int i : p.singular_nodes) singular.push_back(p.grid[i]);
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> jitter(0.0, 0.1);
    std::vector<Vec> pts;
    for (int i = 0; i < 10; ++i) {
        Vec q = c.position(c.a() + (c.b() - c.a()) * i / 9.0);
        for (Eigen::Index j = 0; j < q.size(); ++j) q(j) += jitter(rng);
        pts.push_back(q);
    }
    const FiltrationReport f = verify_filtration(in.frame, pts);
    if (csv) {
        CsvTable t{{"t", "degree"}, {}};
        for (std::size_t i = 0; i < p.grid.size(); ++i) t.rows.push_back({p.grid[i], double(p.pointwise_degree[i])});
        (*csv)["degree"] = std::move(t);
    }
    return {{"curve_degree", p.curve_degree},
            {"singular_t", singular},
            {"singular_count", p.singular_nodes.size()},
            {"filtration_ok", f.ok()},
            {"filtration_worst", f.worst()},
            {"growth_vector", in.frame.growth_vector()}};
}

json length_analysis(const AnalysisInput& in, const RunOptions& o, CsvTables* csv) {
    const Curve c = restricted(need_curve(in, "length"), in.a, in.b);
    const int d = degree_for(in, o);
    const double l = length_Ld(c, in.frame, d, in.a, in.b, grid_of(o));
    if (csv) {
        const Grid g(in.a, in.b, grid_of(o));
        CsvTable t{{"t", "theta"}, {}};
        for (double s : g.nodes()) t.rows.push_back({s, length_density(c, in.frame, d, s)});
        (*csv)["length"] = std::move(t);
    }
    return {{"degree", d}, {"L_d", l}};
}

json blowup_analysis(const AnalysisInput& in, const RunOptions& o) {
    const Curve c = restricted(need_curve(in, "blowup"), in.a, in.b);
    const int d = degree_for(in, o);
    const double l = length_Ld(c, in.frame, d, in.a, in.b, grid_of(o));
    const std::vector<double> rs{1e-2, 1e-4, 1e-6};
    json scaled = json::array(), errors = json::array();
    bool monotone = true;
    double prev = INFINITY, err = 0.0;
    for (double r : rs) {
        const double s = std::pow(r, 0.5 * (d - 1)) * riemannian_length_gr(c, in.frame, r, in.a, in.b, grid_of(o));
        err = std::abs(s - l);
        if (!(err < prev)) monotone = false;
        prev = err;
        scaled.push_back(s);
        errors.push_back(err);
    }
    return {{"degree", d}, {"L_d", l}, {"r", rs}, {"scaled_lengths", scaled}, {"errors", errors},
            {"monotone", monotone}, {"error_at_smallest_r", err}};
}

json admissibility_analysis(const AnalysisInput& in, const RunOptions& o, CsvTables* csv) {
    const Curve& c = need_curve(in, "admissibility");
    const int d = degree_for(in, o);
    const AdmissibilitySystem s = build_system(c, in.frame, d, grid_of(o), in.a, in.b);
    const int mid = s.grid().size() / 2;
    std::mt19937_64 rng(o.seed);
    double dual = 0.0, hol = 0.0;
    int warnings = 0;
    for (int i = 0; i < o.control_trials; ++i) {
        const ControlField g = random_bump_control(s.k(), rng, in.a, in.b);
        const HolonomyResult h = holonomy(s, g);
        warnings += h.support_warning;
        if (s.vertical() == 0) continue;
        const Vec ode = solve_admissibility(s, g, Vec::Zero(s.vertical())).f.back();
        dual = std::max(dual, (h.value - ode).cwiseAbs().maxCoeff());
        hol = std::max(hol, h.value.cwiseAbs().maxCoeff());
    }
    if (csv) {
        CsvTable t;
        t.header.push_back("t");
        const int m = s.vertical(), k = s.k();
        for (int r = 0; r < m; ++r)
            for (int j = 0; j < k; ++j) t.header.push_back("A" + std::to_string(r + 1) + "_" + std::to_string(j + 1));
        for (const char* nm : {"B", "D"})
            for (int r = 0; r < m; ++r)
                for (int j = 0; j < m; ++j) t.header.push_back(nm + std::to_string(r + 1) + "_" + std::to_string(j + 1));
        for (int i = 0; i < s.grid().size(); ++i) {
            std::vector<double> row{s.grid().node(i)};
            for (const Mat* mm : {&s.A(i), &s.B(i), &s.D(i)})
                for (int r = 0; r < mm->rows(); ++r)
                    for (int j = 0; j < mm->cols(); ++j) row.push_back((*mm)(r, j));
            t.rows.push_back(std::move(row));
        }
        (*csv)["admissibility"] = std::move(t);
    }
    return {{"degree", d},
            {"k", s.k()},
            {"vertical", s.vertical()},
            {"A_start", to_json(s.A(0))},
            {"B_start", to_json(s.B(0))},
            {"A_mid", to_json(s.A(mid))},
            {"B_mid", to_json(s.B(mid))},
            {"D_end", to_json(s.D(s.grid().size() - 1))},
            {"det_identity_error", s.determinant_identity_error()},
            {"controls", o.control_trials},
            {"holonomy_dual_path_max", dual},
            {"holonomy_max", hol},
            {"support_warnings", warnings}};
}

RegularityReport regularity_report(const AnalysisInput& in, const RunOptions& o, const Tolerances& tol, int& d) {
    d = degree_for(in, o);
    return classify(build_system(need_curve(in, "regularity"), in.frame, d, grid_of(o), in.a, in.b), tol);
}

json regularity_analysis(const AnalysisInput& in, const RunOptions& o, const Tolerances& tol) {
    int d = 0;
    const RegularityReport r = regularity_report(in, o, tol, d);
    const Curve c = restricted(need_curve(in, "regularity"), in.a, in.b);
    std::mt19937_64 rng(o.seed);
    bool unchanged = true;
    json classes = json::array();
    for (int i = 0; i < o.metric_trials; ++i) {
        const int n = in.frame.dimension();
        const MetricIndependence m = metric_independence_check(c, in.frame, d, random_spd_metric(n, rng),
                                                               random_spd_metric(n, rng), grid_of(o), tol);
        unchanged = unchanged && m.first == r.classification && m.second == r.classification;
        classes.push_back(json::array({to_string(m.first), to_string(m.second)}));
    }
    return {{"degree", d},
            {"classification", to_string(r.classification)},
            {"gram", to_json(r.gram)},
            {"gram_rank", r.gram_rank},
            {"singular_values", to_json(r.singular_values)},
            {"strongly_regular", r.strongly_regular},
            {"failing_nodes", r.failing_nodes.size()},
            {"diagnostic", r.diagnostic},
            {"metric_trials", o.metric_trials},
            {"metric_classifications", classes},
            {"metric_unchanged", unchanged}};
}

json covector_analysis(const AnalysisInput& in, const RunOptions& o, const Tolerances& tol, CsvTables* csv) {
    int d = 0;
    const RegularityReport r = regularity_report(in, o, tol, d);
    json out{{"degree", d}, {"classification", to_string(r.classification)}, {"exists", r.covector.has_value()}};
    if (!r.covector) return out;
    const SingularCovector& cv = *r.covector;
    out["gamma"] = to_json(cv.gamma);
    out["lambda_start"] = to_json(cv.lambda.front());
    out["lambda_end"] = to_json(cv.lambda.back());
    out["ode_residual"] = cv.ode_residual;
    out["annihilation_residual"] = cv.annihilation_residual;
    out["min_norm"] = cv.min_norm;
    out["max_norm"] = cv.max_norm;
    out["valid"] = cv.ode_residual < tol.adm_tol && cv.annihilation_residual < tol.adm_tol && cv.min_norm > 0.0;
    if (csv) {
        CsvTable t;
        t.header.push_back("t");
        for (Eigen::Index i = 0; i < cv.gamma.size(); ++i) t.header.push_back("lambda" + std::to_string(i + 1));
        const Grid g(in.a, in.b, grid_of(o));
        for (int i = 0; i < g.size(); ++i) {
            std::vector<double> row{g.node(i)};
            for (Eigen::Index j = 0; j < cv.lambda[i].size(); ++j) row.push_back(cv.lambda[i](j));
            t.rows.push_back(std::move(row));
        }
        (*csv)["covector"] = std::move(t);
    }
    return out;
}

json geodesic_analysis(const AnalysisInput& in, const RunOptions& o, const Tolerances& tol, CsvTables* csv) {
    Curve c = restricted(need_curve(in, "geodesic"), in.a, in.b);
    const int d = degree_for(in, o);
    const int n = grid_of(o);
    double dev = 0.0;
    const Grid g(c.a(), c.b(), n);
    for (double t : g.nodes()) dev = std::max(dev, std::abs(length_density(c, in.frame, d, t) - 1.0));
    const bool reparam = dev > tol.density_tol;
    if (reparam) c = arc_length_reparameterize(c, in.frame, d);
    const AdmissibilitySystem s = build_system(c, in.frame, d, n);
    const GeodesicResidual r = geodesic_residual(c, in.frame, d, s, tol);
    if (csv) {
        CsvTable t;
        t.header.push_back("t");
        for (int i = 0; i < in.frame.n_at(d); ++i) t.header.push_back("residual" + std::to_string(i + 1));
        for (int i = 0; i < s.grid().size(); ++i) {
            std::vector<double> row{s.grid().node(i)};
            for (Eigen::Index j = 0; j < r.residual[i].size(); ++j) row.push_back(r.residual[i](j));
            t.rows.push_back(std::move(row));
        }
        (*csv)["geodesic"] = std::move(t);
    }
    return {{"degree", d},
            {"reparameterized", reparam},
            {"fitted_k", to_json(r.fitted_k)},
            {"max_residual", r.max_norm},
            {"density_deviation", r.density_deviation},
            {"assumptions", json::array({kIntegrabilityAssumption})}};
}

json variation_analysis(const AnalysisInput& in, const RunOptions& o) {
    const Curve c = restricted(need_curve(in, "variation"), in.a, in.b);
    const int d = degree_for(in, o);
    const Grid g(in.a, in.b, grid_of(o));
    double max_h = 0.0;
    for (const Vec& h : first_variation_field(c, in.frame, d, g)) max_h = std::max(max_h, h.cwiseAbs().maxCoeff());
    std::mt19937_64 rng(o.seed);
    json fd = json::array(), pred = json::array();
    double worst = 0.0;
    for (int i = 0; i < o.variation_trials; ++i) {
        const Curve v = random_bump_field(in.frame.dimension(), in.a, in.b, rng, 0.5);
        const VariationCheck vc = variation_consistency(c, in.frame, d, v, 1e-4, grid_of(o));
        const double scale = std::max({std::abs(vc.finite_difference), std::abs(vc.predicted), 1e-6});
        worst = std::max(worst, std::abs(vc.finite_difference - vc.predicted) / scale);
        fd.push_back(vc.finite_difference);
        pred.push_back(vc.predicted);
    }
    return {{"degree", d},
            {"max_H", max_h},
            {"trials", o.variation_trials},
            {"finite_differences", fd},
            {"predicted", pred},
            {"max_relative_error", worst},
            {"relative_error_floor", 1e-6},
            {"assumptions", json::array({kIntegrabilityAssumption})}};
}

json limits_analysis(const AnalysisInput& in, const RunOptions& o) {
    if (!in.surface) throw InputError("analysis 'limits' needs a surface entry");
    const Surface& s = *in.surface;
    const int n = std::max(grid_of(o), 5);
    auto vec2 = [](double x, double y) { return Vec((Vec(2) << x, y).finished()); };
    if (s.name == "h1_vertical_plane") {
        const SurfaceGeodesic g = surface_geodesic_field(s, vec2(0.2, 0.0), 1.0, n);
        const MinimizerReport m = vertical_plane_minimizer_test(vec2(0, 0), vec2(1, 5), o.minimizer_trials, o.seed);
        return {{"bracket", g.bracket},
                {"every_curve_critical", g.every_curve_critical},
                {"p", {0.0, 0.0}},
                {"q", {1.0, 5.0}},
                {"two_segment_length", m.two_segment_length},
                {"min_competitor", m.min_competitor},
                {"trials", m.trials},
                {"violations", m.violations},
                {"slack", m.slack}};
    }
    if (s.name == "h1_characteristic_plane") {
        const LimitResult lim = characteristic_plane_limit({1e-2, 1e-3, 1e-4}, n);
        return {{"rho", lim.params},
                {"lengths", lim.values},
                {"limit", lim.limit},
                {"length_rho_1", characteristic_plane_limit({1.0}, n).values[0]},
                {"length_rho_2", characteristic_plane_limit({2.0}, n).values[0]},
                {"bracket_rho_1", surface_bracket(s, vec2(1.0, 0.0))}};
    }
    if (s.name == "pansu_sphere") {
        const PansuLimit lim = pansu_limit({1e-2, 1e-3, 1e-4}, 1e-4, n);
        const Curve flow = s_flow(s, vec2(0.3, 0.0), 0.4, n);
        bool decreasing = true;
        double prev = s.embedding(flow.position(0.0))(2);
        for (int i = 1; i <= 100; ++i) {
            const double t = s.embedding(flow.position(0.004 * i))(2);
            decreasing = decreasing && t < prev;
            prev = t;
        }
        return {{"rho0", lim.half_length.params},
                {"half_lengths", lim.half_length.values},
                {"s_bar", lim.s_bar},
                {"two_s_bar", lim.two_s_bar},
                {"s_bar_rho_half", pansu_half_length(0.5, 1e-4, n)},
                {"t_decreasing", decreasing},
                {"bracket_rho_half", surface_bracket(s, vec2(0.5, 0.0))}};
    }
    throw InputError("no limit experiment is defined for surface '" + s.name + "'");
}

bool compare(const json& actual, const json& want, double tol, Comparison cmp, std::string& why) {
    if (want.is_array()) {
        if (!actual.is_array()) {
            why = "expected an array";
            return false;
        }
        if (cmp == Comparison::EqualUpToSign) {
            json neg = json::array();
            for (const auto& x : want) neg.push_back(-x.get<double>());
            std::string w1, w2;
            if (compare(actual, want, tol, Comparison::Equal, w1) || compare(actual, neg, tol, Comparison::Equal, w2))
                return true;
            why = "differs from the expected vector up to sign";
            return false;
        }
        if (actual.size() != want.size()) {
            why = "array length " + std::to_string(actual.size()) + " != " + std::to_string(want.size());
            return false;
        }
        for (std::size_t i = 0; i < want.size(); ++i)
            if (!compare(actual[i], want[i], tol, cmp, why)) return false;
        return true;
    }
    if (want.is_number()) {
        if (!actual.is_number()) {
            why = "expected a number";
            return false;
        }
        const double a = actual.get<double>(), w = want.get<double>();
        bool ok = false;
        if (cmp == Comparison::AtMost) ok = a <= w + tol;
        else if (cmp == Comparison::AtLeast) ok = a >= w - tol;
        else ok = std::abs(a - w) <= tol;
        if (!ok) {
            std::ostringstream os;
            os.precision(17);
            os << "actual " << a << " vs expected " << w << " (" << to_string(cmp) << ", tol " << tol << ")";
            why = os.str();
        }
        return ok;
    }
    if (actual != want) {
        why = "actual " + actual.dump() + " != expected " + want.dump();
        return false;
    }
    return true;
}

}  // namespace

json run_analysis(const std::string& analysis, const AnalysisInput& in, const RunOptions& o, CsvTables* csv) {
    const Tolerances tol = Tolerances{}.scaled(o.tol_scale);
    json results;
    if (analysis == "degree") results = degree_analysis(in, o, csv);
    else if (analysis == "length") results = length_analysis(in, o, csv);
    else if (analysis == "blowup") results = blowup_analysis(in, o);
    else if (analysis == "admissibility") results = admissibility_analysis(in, o, csv);
    else if (analysis == "regularity") results = regularity_analysis(in, o, tol);
    else if (analysis == "covector") results = covector_analysis(in, o, tol, csv);
    else if (analysis == "geodesic") results = geodesic_analysis(in, o, tol, csv);
    else if (analysis == "variation") results = variation_analysis(in, o);
    else if (analysis == "limits") results = limits_analysis(in, o);
    else throw InputError("unknown analysis '" + analysis + "'");
    return results;
}

ExpectationOutcome check_expectation(const Expectation& e, const json& results, double tol_scale) {
    ExpectationOutcome out;
    if (!results.is_object() || !results.contains(e.key)) {
        out.reason = "missing result '" + e.key + "'";
        return out;
    }
    out.actual = results.at(e.key);
    out.pass = compare(out.actual, e.value, e.tol * tol_scale, e.comparison, out.reason);
    return out;
}

namespace {

CaseReport run_common(const AnalysisInput& in, const RunOptions& o, const std::vector<std::string>& analyses,
                      const std::vector<Expectation>* expectations, json header) {
    CaseReport rep;
    const Tolerances tol = Tolerances{}.scaled(o.tol_scale);
    json inputs{{"frame", in.frame.name()},
                {"curve", in.curve ? json(in.curve->label()) : json(nullptr)},
                {"surface", in.surface ? json(in.surface->name) : json(nullptr)},
                {"degree", in.degree ? json(*in.degree) : json("auto")},
                {"interval", {in.a, in.b}},
                {"grid", grid_of(o)},
                {"tol_scale", o.tol_scale},
                {"seed", o.seed}};
    json out = std::move(header);
    out["inputs"] = inputs;
    out["analyses"] = json::object();
    for (const std::string& name : analyses) {
        json entry{{"inputs", inputs}, {"tolerances", tolerance_json(tol)}};
        CsvTables tables;
        try {
            entry["results"] = run_analysis(name, in, o, &tables);
        } catch (const Error& err) {
            entry["error"] = err.what();
            rep.had_error = true;
        }
        if (expectations) {
            json checks = json::array();
            for (const Expectation& e : *expectations) {
                if (e.analysis != name) continue;
                const ExpectationOutcome oc = entry.contains("results")
                                                  ? check_expectation(e, entry["results"], o.tol_scale)
                                                  : ExpectationOutcome{false, nullptr, "analysis failed"};
                json c{{"key", e.key},
                       {"expected", e.value},
                       {"actual", oc.actual},
                       {"comparison", to_string(e.comparison)},
                       {"tol", e.tol * o.tol_scale},
                       {"provenance", to_string(e.provenance)},
                       {"anchor", e.anchor},
                       {"pass", oc.pass}};
                if (!oc.pass) {
                    c["reason"] = oc.reason;
                    rep.passed = false;
                }
                checks.push_back(std::move(c));
            }
            entry["expectations"] = std::move(checks);
        }
        out["analyses"][name] = std::move(entry);
        if (!tables.empty()) rep.csv[name] = std::move(tables);
    }
    out["passed"] = rep.passed;
    out["had_error"] = rep.had_error;
    rep.json = std::move(out);
    return rep;
}

std::vector<std::string> validated(const std::vector<std::string>& analyses) {
    for (const std::string& a : analyses)
        if (std::find(analysis_names().begin(), analysis_names().end(), a) == analysis_names().end())
            throw InputError("unknown analysis '" + a + "'");
    return analyses;
}

}  // namespace

CaseReport run_case(const CatalogEntry& entry, const CatalogCase& c, const RunOptions& o,
                    const std::vector<std::string>& analyses) {
    AnalysisInput in{entry.name + "/" + c.name, entry.frame, c.curve, entry.surface, c.degree, c.a, c.b};
    if (o.interval) {
        in.a = o.interval->first;
        in.b = o.interval->second;
    }
    const std::vector<std::string> list = validated(analyses.empty() ? c.analyses : analyses);
    json header{{"entry", entry.name}, {"case", c.name}, {"description", entry.description}, {"anchor", entry.anchor}};
    return run_common(in, o, list, &c.expectations, std::move(header));
}

CaseReport run_input(const AnalysisInput& in, const RunOptions& o, const std::vector<std::string>& analyses) {
    return run_common(in, o, validated(analyses), nullptr, {{"entry", nullptr}, {"case", in.label}});
}

}  // namespace graded
