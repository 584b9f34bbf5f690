#pragma once

/// @file cli.hpp
/// Command-line front end. Result JSON goes to `out`, diagnostics to `err`.
///
/// Exit codes: 0 success, 1 domain-level negative result (with --strict, or
/// when no artifact can be produced), 2 input error.

#include <ostream>
#include <string>
#include <vector>

namespace lpair::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpair::cli
