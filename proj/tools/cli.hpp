#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace energia::cli {

/// Exit codes: 0 ok, 1 a hard assertion failed, 2 bad input.
inline constexpr int kOk = 0;
inline constexpr int kAssertionFailed = 1;
inline constexpr int kBadInput = 2;

/// Runs one `energia` invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace energia::cli
