#pragma once

#include "graded/analysis.hpp"
#include "graded/catalog.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace graded {

struct Scenario {
    AnalysisInput input;
    std::vector<std::string> analyses;
    std::optional<int> grid;
    std::optional<std::string> out_dir;
    bool csv = false;
    // Set when the curve refers to a catalog case of a catalog frame, so its expectations apply.
    std::optional<CatalogEntry> entry;
    std::optional<CatalogCase> catalog_case;
};

// All parsers throw SchemaError with the offending field path; relative file references
// are resolved against base_dir.
AdaptedFrame parse_frame(const nlohmann::json& j, const std::string& path, const std::string& base_dir = ".");
Curve parse_curve(const nlohmann::json& j, const std::string& path, int dimension, const std::string& base_dir = ".");
Scenario parse_scenario(const nlohmann::json& j, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& file);

nlohmann::json load_json_file(const std::string& file, const std::string& path);

}  // namespace graded
