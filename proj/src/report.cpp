#include "graded/report.hpp"

#include "graded/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace graded {

namespace {

std::string format_real(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_value(std::ostream& out, const nlohmann::json& v, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (v.type()) {
        case nlohmann::json::value_t::object: {
            if (v.empty()) {
                out << "{}";
                return;
            }
            out << '{' << nl;
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {  // std::map storage: already sorted
                if (!first) out << ',' << nl;
                first = false;
                out << pad << nlohmann::json(it.key()).dump() << (indent > 0 ? ": " : ":");
                write_value(out, it.value(), indent, depth + 1);
            }
            out << nl << close_pad << '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (v.empty()) {
                out << "[]";
                return;
            }
            out << '[' << nl;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out << ',' << nl;
                out << pad;
                write_value(out, v[i], indent, depth + 1);
            }
            out << nl << close_pad << ']';
            return;
        }
        case nlohmann::json::value_t::number_float: out << format_real(v.get<double>()); return;
        default: out << v.dump(); return;
    }
}

}  // namespace

void write_json(std::ostream& out, const nlohmann::json& value, int indent) {
    write_value(out, value, indent, 0);
    out << '\n';
}

std::string dump_json(const nlohmann::json& value, int indent) {
    std::ostringstream os;
    write_json(os, value, indent);
    return os.str();
}

nlohmann::json to_json(const Vec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

nlohmann::json to_json(const Mat& m) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        a.push_back(std::move(row));
    }
    return a;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write CSV file '" + path + "'");
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
        out << '\n';
    }
}

}  // namespace graded
