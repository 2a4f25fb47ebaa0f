// Command-line front end: run, sweep, oracle.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 runtime error.
// Diagnostics go to `err`.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anywaresim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0,0.5,1", "0:0.1:1" (start:step:end) or "0,0.1,...,1" (step taken from
/// the two values before the ellipsis). Throws ConfigError.
std::vector<double> parse_value_list(const std::string& text);

}  // namespace anywaresim
