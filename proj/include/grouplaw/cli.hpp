#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grouplaw::cli {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes: 0 verified/true, 1 refuted/false (with counterexample),
// 2 inconclusive (budget exhausted), 64 usage error.
inline constexpr int kExitVerified = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

// Runs one CLI invocation. `args` excludes the program name. The report
// goes to `out` (or the --out file); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace grouplaw::cli
