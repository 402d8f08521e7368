#pragma once

#include "graded/catalog.hpp"
#include "graded/curve.hpp"
#include "graded/frame.hpp"
#include "graded/report.hpp"
#include "graded/surface.hpp"
#include "graded/tolerances.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graded {

const std::vector<std::string>& analysis_names();

struct RunOptions {
    std::optional<int> grid;                           // default 1001
    std::optional<std::pair<double, double>> interval;  // overrides the case interval
    double tol_scale = 1.0;
    std::uint64_t seed = 42;
    int control_trials = 20;     // random bump controls for the holonomy dual-path check
    int metric_trials = 4;       // random metric pairs for the metric-independence check
    int variation_trials = 10;   // random fields V for the first-variation check
    int minimizer_trials = 100;  // random competitors for the vertical-plane minimizer
};

struct AnalysisInput {
    std::string label;
    AdaptedFrame frame;
    std::optional<Curve> curve;
    std::optional<Surface> surface;
    std::optional<int> degree;  // default: computed curve degree
    double a = 0.0, b = 1.0;
};

// CSV tables produced alongside the JSON results, keyed by a short table name.
using CsvTables = std::map<std::string, CsvTable>;

// Results object for one analysis. Throws graded::Error subclasses on failure.
nlohmann::json run_analysis(const std::string& analysis, const AnalysisInput& input, const RunOptions& options,
                            CsvTables* csv = nullptr);

struct ExpectationOutcome {
    bool pass = false;
    nlohmann::json actual;
    std::string reason;
};

ExpectationOutcome check_expectation(const Expectation& e, const nlohmann::json& results, double tol_scale);

struct CaseReport {
    nlohmann::json json;
    bool passed = true;      // all expectations met
    bool had_error = false;  // some analysis threw
    std::map<std::string, CsvTables> csv;  // per analysis
};

// Runs the requested analyses (default: the case list) and checks catalog expectations.
CaseReport run_case(const CatalogEntry& entry, const CatalogCase& c, const RunOptions& options,
                    const std::vector<std::string>& analyses = {});

// Runs analyses on a user-supplied input; no expectations.
CaseReport run_input(const AnalysisInput& input, const RunOptions& options, const std::vector<std::string>& analyses);

}  // namespace graded
