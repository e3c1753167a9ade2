#pragma once

#include <string>
#include <vector>

namespace zi::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRegression = 1;  // a frozen constant was exceeded, or a run failed
inline constexpr int kUsage = 2;

/// Parses args (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

/// "1/4" -> 0.25, "0.5" -> 0.5. Throws PreconditionError on malformed input.
double parse_rational(const std::string& text);
/// "-4..4", "1,3,5" or "2".
std::vector<int> parse_int_list(const std::string& text);

} // namespace zi::cli
