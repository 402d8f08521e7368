// Acceptance driver: measures every criterion quantity at a base grid, prints one PASS/FAIL line per
// criterion, then repeats the measurement on a refined grid for the stability criterion.

#include "graded/admissibility.hpp"
#include "graded/analysis.hpp"
#include "graded/catalog.hpp"
#include "graded/frames.hpp"
#include "graded/generators.hpp"
#include "graded/regularity.hpp"
#include "graded/surface.hpp"
#include "graded/variation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace graded;

namespace {

struct Quantity {
    int criterion;
    std::string name;
    double value;
    double tol;  // stability allowance is 10 * tol; 0 means the value must not change
    bool pass;
};

class Sheet {
public:
    // Error measure that must stay below tol.
    void below(int c, const std::string& name, double value, double tol) {
        items_.push_back({c, name, value, tol, std::isfinite(value) && value < tol});
    }
    // Discrete quantity that must equal its target.
    void equals(int c, const std::string& name, double value, double target) {
        items_.push_back({c, name, value, 0.0, value == target});
    }
    // Value that must be at least the bound (within the stated slack).
    void at_least(int c, const std::string& name, double value, double bound, double tol) {
        items_.push_back({c, name, value, tol, value >= bound - tol});
    }
    const std::vector<Quantity>& items() const { return items_; }

private:
    std::vector<Quantity> items_;
};

Vec vec(std::initializer_list<double> v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

const CatalogCase& catalog_case(const CatalogEntry& e, const std::string& name) { return e.find_case(name); }

void covector_checks(Sheet& s, int c, const std::string& label, const RegularityReport& r) {
    const Tolerances tol;
    s.equals(c, label + ".singular", r.classification == Classification::Singular, 1);
    s.equals(c, label + ".covector_present", r.covector.has_value(), 1);
    if (!r.covector) return;
    s.below(c, label + ".ode_residual", r.covector->ode_residual, tol.sing_tol);
    s.below(c, label + ".annihilation_residual", r.covector->annihilation_residual, tol.sing_tol);
    s.equals(c, label + ".nonvanishing", r.covector->min_norm > 0.5, 1);
}

void engel_singularity(Sheet& s, int grid) {
    const CatalogEntry e = catalog_get("engel");
    const CatalogCase& c = catalog_case(e, "x2_line");
    const RegularityReport r = classify(build_system(*c.curve, e.frame, 1, grid, 0.0, 1.0));
    covector_checks(s, 1, "engel", r);
    s.equals(1, "engel.gram_rank", r.gram_rank, 1);
    if (r.covector) {
        const Vec expected = vec({0, 1});
        const double err = std::min((r.covector->gamma - expected).cwiseAbs().maxCoeff(),
                                    (r.covector->gamma + expected).cwiseAbs().maxCoeff());
        s.below(1, "engel.gamma_error", err, 1e-6);
    }
}

void heisenberg_regularity(Sheet& s, int grid) {
    std::mt19937_64 rng(2024);
    const AdaptedFrame h = frames::heisenberg(1);
    int regular = 0, strong = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const Curve c = random_horizontal_heisenberg(rng);
        const RegularityReport r = classify(build_system(c, h, 1, grid));
        regular += r.classification == Classification::Regular;
        strong += r.strongly_regular;
    }
    s.equals(2, "heisenberg.regular_count", regular, 20);
    s.equals(2, "heisenberg.strongly_regular_count", strong, 20);
}

void determinant_identity(Sheet& s, int grid) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> dim(1, 4), deg(0, 3);
    const Grid g(0, 1, grid);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const int m = dim(rng), p = deg(rng);
        std::vector<Mat> coeff(p + 1, Mat(m, m));
        for (Mat& ci : coeff)
            for (int i = 0; i < m * m; ++i) ci.data()[i] = u(rng);
        auto b = [coeff](double t) {
            Mat acc = Mat::Zero(coeff[0].rows(), coeff[0].cols());
            for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * t + *it;
            return acc;
        };
        const auto sys = AdmissibilitySystem::from_samplers(g, 1, m, [m](double) { return Mat::Zero(m, 1); }, b);
        worst = std::max(worst, sys.determinant_identity_error());
    }
    s.below(3, "det_identity.max_relative_error", worst, 1e-6);
}

void dual_path_holonomy(Sheet& s, int grid) {
    RunOptions opts;
    opts.grid = grid;
    opts.control_trials = 20;
    double worst = 0.0;
    int curves = 0;
    for (const std::string& name : catalog_names()) {
        const CatalogEntry e = catalog_get(name);
        for (const CatalogCase& c : e.cases) {
            if (!c.curve) continue;
            const AnalysisInput in{name + "/" + c.name, e.frame, c.curve, e.surface, c.degree, c.a, c.b};
            const nlohmann::json r = run_analysis("admissibility", in, opts);
            worst = std::max(worst, r.at("holonomy_dual_path_max").get<double>());
            ++curves;
        }
    }
    s.below(4, "holonomy.dual_path_max", worst, 1e-7);
    s.at_least(4, "holonomy.catalog_curves", curves, 1, 0.0);
}

void blowup_limit(Sheet& s, int grid) {
    const CatalogEntry e = catalog_get("heisenberg_h1");
    const CatalogCase& c = catalog_case(e, "blowup_segment");
    RunOptions opts;
    opts.grid = grid;
    const AnalysisInput in{"blowup", e.frame, c.curve, std::nullopt, c.degree, c.a, c.b};
    const nlohmann::json r = run_analysis("blowup", in, opts);
    s.below(5, "blowup.error_at_r_1e-6", r.at("error_at_smallest_r").get<double>(), 1e-3);
    s.equals(5, "blowup.monotone", r.at("monotone").get<bool>(), 1);
}

void heisenberg_geodesics(Sheet& s, int grid) {
    const AdaptedFrame h = frames::heisenberg(1);
    for (double k : {0.0, 0.5, -0.5, 2.0, -2.0}) {
        const Curve c = heisenberg_geodesic(k, vec({0.1, -0.2, 0.3}), vec({0.6, 0.8}), 2.0, 4 * (grid - 1) + 1);
        const GeodesicResidual r = geodesic_residual(c, h, 1, build_system(c, h, 1, grid));
        char label_buf[32];
        std::snprintf(label_buf, sizeof label_buf, "geodesic.k=%g", k);
        const std::string label = label_buf;
        s.below(6, label + ".residual", r.max_norm, 1e-5);
        s.below(6, label + ".multiplier_error", std::abs(r.fitted_k(0) - 2 * k), 1e-5);
    }
    const Curve vertical = polynomial_curve("vertical", {Polynomial({0}), Polynomial({0}), Polynomial({0, 1})}, 0, 1);
    const GeodesicResidual r = geodesic_residual(vertical, h, 2, build_system(vertical, h, 2, grid));
    double worst = 0.0;
    for (const Vec& v : r.residual) worst = std::max(worst, v.size() ? v.cwiseAbs().maxCoeff() : 0.0);
    s.equals(6, "geodesic.vertical_line_residual", worst, 0.0);
}

void characteristic_limit(Sheet& s, int grid) {
    const LimitResult lim = characteristic_plane_limit({1e-2, 1e-3, 1e-4}, grid);
    s.below(7, "characteristic.limit_error", std::abs(lim.limit - 2 * M_PI), 1e-3);
}

void pansu_limits(Sheet& s, int grid) {
    const PansuLimit lim = pansu_limit({1e-2, 1e-3, 1e-4}, 1e-4, grid);
    s.below(8, "pansu.two_s_bar_error", std::abs(lim.two_s_bar - M_PI / 2), 1e-3);
    s.below(8, "pansu.s_bar_error", std::abs(lim.s_bar - M_PI / 4), 1e-3);
}

void metric_independence(Sheet& s, int grid) {
    std::mt19937_64 rng(7);
    const CatalogEntry engel = catalog_get("engel");
    const Curve& line = *catalog_case(engel, "x2_line").curve;
    const AdaptedFrame heis = frames::heisenberg(1);
    int unchanged = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const MetricIndependence m = metric_independence_check(line, engel.frame, 1, {}, random_spd_metric(4, rng), grid);
        unchanged += m.independent() && m.first == Classification::Singular;
    }
    for (int trial = 0; trial < 20; ++trial) {
        const Curve c = random_horizontal_heisenberg(rng);
        const MetricIndependence m = metric_independence_check(c, heis, 1, {}, random_spd_metric(3, rng), grid);
        unchanged += m.independent() && m.first == Classification::Regular;
    }
    s.equals(9, "metric.unchanged_runs", unchanged, 40);
}

void vertical_plane_minimizer(Sheet& s, int) {
    const MinimizerReport m = vertical_plane_minimizer_test(vec({0, 0}), vec({1, 5}), 100, 42);
    s.below(10, "minimizer.two_segment_error", std::abs(m.two_segment_length - 5.0), 1e-12);
    s.equals(10, "minimizer.trials", m.trials, 100);
    s.equals(10, "minimizer.violations", m.violations, 0);
    s.at_least(10, "minimizer.competitor_margin", m.min_competitor - m.two_segment_length, 0.0, 1e-9);
}

void kolmogorov_euclidean(Sheet& s, int grid) {
    const CatalogEntry kol = catalog_get("kolmogorov");
    const CatalogCase& kc = catalog_case(kol, "t_line");
    covector_checks(s, 11, "kolmogorov", classify(build_system(*kc.curve, kol.frame, 2, grid, kc.a, kc.b)));
    const CatalogEntry euc = catalog_get("euclidean_split(4,2)");
    const CatalogCase& ec = catalog_case(euc, "bent_curve");
    covector_checks(s, 11, "euclidean_split", classify(build_system(*ec.curve, euc.frame, 1, grid, ec.a, ec.b)));
}

void structure_tables(Sheet& s, int) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2, 2);
    auto random_point = [&](int dim) {
        Vec p(dim);
        for (int i = 0; i < dim; ++i) p(i) = u(rng);
        return p;
    };
    auto worst_error = [&](const AdaptedFrame& f, const std::function<double(int, int, int)>& table) {
        const int n = f.dimension();
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Tensor3 c = f.structure_functions(random_point(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(c(i, j, k) - table(i, j, k)));
        }
        return worst;
    };
    // [X, Y] = T
    const double heis = worst_error(frames::heisenberg(1), [](int i, int j, int k) {
        if (k != 2) return 0.0;
        return i == 0 && j == 1 ? 1.0 : i == 1 && j == 0 ? -1.0 : 0.0;
    });
    // [X_1, X_2] = X_3, [X_1, X_3] = X_4
    const double engel = worst_error(frames::engel(), [](int i, int j, int k) {
        if (k == 2 && i == 0 && j == 1) return 1.0;
        if (k == 2 && i == 1 && j == 0) return -1.0;
        if (k == 3 && i == 0 && j == 2) return 1.0;
        if (k == 3 && i == 2 && j == 0) return -1.0;
        return 0.0;
    });
    s.below(12, "structure.heisenberg_max_error", heis, 1e-10);
    s.below(12, "structure.engel_max_error", engel, 1e-10);
}

void variational_consistency(Sheet& s, int grid) {
    const Surface cp = characteristic_plane();
    const Curve chart = polynomial_curve("chart", {Polynomial({1, 0.3}), Polynomial({0, 1})}, 0, 1);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1, 1), margin(0.05, 0.35);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double a1 = u(rng), a2 = u(rng), lo = margin(rng), hi = 1 - margin(rng), f = 3 * u(rng);
        auto bump = [=](double t) { return t <= lo || t >= hi ? 0.0 : std::pow(std::sin(M_PI * (t - lo) / (hi - lo)), 4); };
        auto dbump = [=](double t) {
            if (t <= lo || t >= hi) return 0.0;
            const double x = M_PI * (t - lo) / (hi - lo);
            return 4 * std::pow(std::sin(x), 3) * std::cos(x) * M_PI / (hi - lo);
        };
        const Curve v("V", 0, 1, [=](double t) { return vec({a1 * bump(t) * std::cos(f * t), a2 * bump(t)}); },
                      [=](double t) {
                          return vec({a1 * (dbump(t) * std::cos(f * t) - f * bump(t) * std::sin(f * t)), a2 * dbump(t)});
                      });
        worst = std::max(worst, variation_consistency(chart, *cp.chart_frame, 2, v, 1e-4, grid).relative_error());
    }
    s.below(13, "variation.max_relative_error", worst, 1e-3);
}

const std::vector<std::pair<std::string, std::function<void(Sheet&, int)>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<void(Sheet&, int)>>> list{
        {"Engel line singularity", engel_singularity},
        {"Heisenberg regularity", heisenberg_regularity},
        {"fundamental-matrix determinant identity", determinant_identity},
        {"holonomy dual path", dual_path_holonomy},
        {"blow-up limit", blowup_limit},
        {"Heisenberg geodesics", heisenberg_geodesics},
        {"characteristic-plane limit", characteristic_limit},
        {"Pansu limits", pansu_limits},
        {"metric independence", metric_independence},
        {"vertical-plane minimizer", vertical_plane_minimizer},
        {"Kolmogorov and Euclidean-split singularity", kolmogorov_euclidean},
        {"structure-constant tables", structure_tables},
        {"variational consistency", variational_consistency},
    };
    return list;
}

struct Measurement {
    std::vector<Quantity> items;
    std::vector<std::string> errors;  // per criterion, empty when it ran
    std::vector<double> seconds;
};

Measurement measure(int grid) {
    Measurement m;
    for (const auto& [name, run] : criteria()) {
        Sheet sheet;
        std::string error;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(sheet, grid);
        } catch (const std::exception& e) {
            error = e.what();
        }
        m.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        m.errors.push_back(error);
        for (const Quantity& q : sheet.items()) m.items.push_back(q);
    }
    return m;
}

}  // namespace

int main() {
    const Measurement base = measure(1001);
    int failures = 0;
    for (std::size_t c = 0; c < criteria().size(); ++c) {
        const int id = static_cast<int>(c) + 1;
        bool ok = base.errors[c].empty();
        std::string detail = ok ? "" : "error: " + base.errors[c];
        int count = 0;
        for (const Quantity& q : base.items) {
            if (q.criterion != id) continue;
            ++count;
            if (!q.pass) {
                ok = false;
                char buf[256];
                std::snprintf(buf, sizeof buf, "%s%s = %.3g (tol %.1g)", detail.empty() ? "" : "; ", q.name.c_str(),
                              q.value, q.tol);
                detail += buf;
            }
        }
        if (count == 0) ok = false;
        if (ok) {
            for (const Quantity& q : base.items) {
                if (q.criterion != id) continue;
                char buf[256];
                if (q.tol > 0.0)
                    std::snprintf(buf, sizeof buf, "%s%s=%.3g (tol %.0e)", detail.empty() ? "" : ", ", q.name.c_str(),
                                  q.value, q.tol);
                else
                    std::snprintf(buf, sizeof buf, "%s%s=%g", detail.empty() ? "" : ", ", q.name.c_str(), q.value);
                detail += buf;
            }
        }
        failures += !ok;
        std::printf("%s %2d %s [%.2f s]: %s\n", ok ? "PASS" : "FAIL", id, criteria()[c].first.c_str(), base.seconds[c],
                    detail.c_str());
    }

    const Measurement fine = measure(2001);
    bool stable = fine.items.size() == base.items.size();
    std::string detail;
    double fine_seconds = 0.0;
    for (double t : fine.seconds) fine_seconds += t;
    for (const std::string& e : fine.errors)
        if (!e.empty()) {
            stable = false;
            detail += "error on the refined grid: " + e + "; ";
        }
    double worst_ratio = 0.0;
    for (std::size_t i = 0; stable && i < base.items.size(); ++i) {
        const Quantity &a = base.items[i], &b = fine.items[i];
        const double change = std::abs(a.value - b.value);
        const bool ok = b.name == a.name && (a.tol == 0.0 ? change == 0.0 : change < 10.0 * a.tol);
        if (a.tol > 0.0) worst_ratio = std::max(worst_ratio, change / a.tol);
        if (!ok) {
            stable = false;
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s changed by %.3g (allowed %.1g); ", a.name.c_str(), change, 10.0 * a.tol);
            detail += buf;
        }
    }
    if (stable) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%zu quantities, largest change %.3g x tolerance", base.items.size(), worst_ratio);
        detail = buf;
    }
    failures += !stable;
    std::printf("%s 14 grid stability 1001 -> 2001 [%.2f s]: %s\n", stable ? "PASS" : "FAIL", fine_seconds,
                detail.c_str());
    return failures == 0 ? 0 : 1;
}
