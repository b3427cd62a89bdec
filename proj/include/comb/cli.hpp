#pragma once

// comb_range command line. Every command writes CSV with a header row.
//
// Exit codes: 0 success (fit: law supported), 1 fit verdict negative,
// 2 usage or input error, 3 resource exhaustion.

#include <iosfwd>
#include <string>
#include <vector>

namespace comb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Runs the CLI on `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal that round-trips to the same double.
std::string format_real(double value);

}  // namespace comb::cli
