#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elp::cli {

/// Exit statuses of `elpsolve solve`.
inline constexpr int kExitFound = 0;
inline constexpr int kExitNone = 1;
inline constexpr int kExitError = 2;

/// Runs `elpsolve` with `args` (without the program name). Input files named
/// `-` or omitted are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace elp::cli
