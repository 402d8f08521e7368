#pragma once

#include "graded/numerics.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace graded {

// Keys sorted, reals printed with 17 significant digits, non-finite reals as null.
void write_json(std::ostream& out, const nlohmann::json& value, int indent = 2);
std::string dump_json(const nlohmann::json& value, int indent = 2);

nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const Mat& m);  // array of rows

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);

}  // namespace graded
