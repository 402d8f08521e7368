#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graded::cli {

enum ExitCode { kOk = 0, kInputError = 1, kMismatch = 2 };

// Entry point shared by the executable and the tests; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graded::cli
