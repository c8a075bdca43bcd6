#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vnfscale::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCoverage = 3;

// Runs one command line (args[0] is the program name). Records go to `out`
// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// CSV number formatting: 12 significant digits.
std::string format_number(double v);

}  // namespace vnfscale::cli
