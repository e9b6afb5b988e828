#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scbench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

// Command-line front end; `args` excludes the program name.
int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scbench
