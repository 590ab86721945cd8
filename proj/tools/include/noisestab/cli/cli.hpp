#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noisestab::cli {

inline constexpr int kExitOk = 0;
/// A hard assertion (cross-check, certified bound) failed.
inline constexpr int kExitAssertion = 1;
/// Bad usage, malformed input, or a budget guard refused the work.
inline constexpr int kExitInput = 2;

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noisestab::cli
