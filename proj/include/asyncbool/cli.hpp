#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace asyncbool::cli {

// Exit codes: 0 = success or property holds, 1 = property fails, 2 = usage or parse error.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asyncbool::cli
