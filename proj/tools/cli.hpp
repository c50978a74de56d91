#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kratzer::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFlawed = 1;  // diagnose: equilibrium conditions violated; correct: validation failed
inline constexpr int kUsage = 2;   // bad arguments, unreadable or invalid input
inline constexpr int kDomain = 3;  // radius outside the domain
inline constexpr int kNumeric = 4; // no minimum, no bound states, failed cross-check

/// Runs one subcommand; args excludes the program name. Reads `-` specs from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace kratzer::cli
