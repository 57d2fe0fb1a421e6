#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace maxmean::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kDomain = 2;
inline constexpr int kUsage = 64;
inline constexpr int kInternal = 70;

/// Parses `args` (without the program name) and runs the command.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxmean::cli
