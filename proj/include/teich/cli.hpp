#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace teich::cli {

enum ExitCode { ok = 0, verdict_failure = 2, numerical_error = 3, usage_error = 64 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace teich::cli
