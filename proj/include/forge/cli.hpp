#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace forge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitUsage = 64;

// Runs one command. JSON results go to `out`, usage errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forge
