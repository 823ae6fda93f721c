#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kleinb::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kSelftestFailed = 1;
inline constexpr int kValidation = 2;
inline constexpr int kNumerical = 3;

// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kleinb::cli
