#pragma once

#include "graded/curve.hpp"
#include "graded/frame.hpp"
#include "graded/surface.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace graded {

enum class Provenance { Published, Trivial, Derived };
std::string to_string(Provenance p);

enum class Comparison {
    Equal,           // exact for strings, booleans and integers; |x - y| <= tol for reals, elementwise for arrays
    AtMost,          // actual <= value + tol
    AtLeast,         // actual >= value - tol
    EqualUpToSign,   // arrays equal to +value or -value within tol
};
std::string to_string(Comparison c);

struct Expectation {
    std::string analysis;  // analysis that produces the quantity
    std::string key;       // key inside that analysis' results
    nlohmann::json value;
    double tol = 0.0;
    Comparison comparison = Comparison::Equal;
    Provenance provenance = Provenance::Derived;
    std::string anchor;
};

struct CatalogCase {
    std::string name;
    std::optional<Curve> curve;
    int degree = 1;
    double a = 0.0, b = 1.0;
    std::vector<std::string> analyses;
    std::vector<Expectation> expectations;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    std::string anchor;
    AdaptedFrame frame;
    std::optional<Surface> surface;
    std::vector<CatalogCase> cases;

    const CatalogCase& find_case(const std::string& case_name) const;
};

// Names accepted by catalog_get; parametric families are listed with their default parameters.
std::vector<std::string> catalog_names();

// Throws LookupError listing the available names.
CatalogEntry catalog_get(const std::string& name);

}  // namespace graded
