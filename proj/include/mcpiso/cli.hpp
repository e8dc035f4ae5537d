#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mcpiso::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

// Runs one subcommand. Reports go to `out`, diagnostics to `err`.
// Returns 0 on success, 2 when a mathematical check fails, 1 on usage or
// domain errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a:b:n" -> n points from a to b (linear, or geometric when log_spaced);
// a plain number -> that number.
std::vector<double> parse_sweep(const std::string& spec, bool log_spaced);

// printf("%.*g") in the C locale; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x, int precision);

}  // namespace mcpiso::cli
