#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cycdec::cli {

inline constexpr int kSuccess = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Exit codes: 0 success, 1 negative verdict or no
/// decomposition, 2 bad arguments or malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cycdec::cli
