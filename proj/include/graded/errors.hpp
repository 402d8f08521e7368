#pragma once

#include <stdexcept>
#include <string>

namespace graded {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvaluationError : Error { using Error::Error; };
struct DegenerateFrameError : Error { using Error::Error; };
struct UndefinedDegreeError : Error { using Error::Error; };
struct ImmersionError : Error { using Error::Error; };
struct InadmissibleCurveError : Error { using Error::Error; };
struct DivergenceError : Error { using Error::Error; };
struct SingularDensityError : Error { using Error::Error; };
struct NormalizationError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct LookupError : Error { using Error::Error; };
struct InputError : Error { using Error::Error; };

// Carries a JSON-pointer style location of the offending field.
struct SchemaError : InputError {
    SchemaError(const std::string& path, const std::string& what)
        : InputError(path + ": " + what), field_path(path) {}
    std::string field_path;
};

}  // namespace graded
