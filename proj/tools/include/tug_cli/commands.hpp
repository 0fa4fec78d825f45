#ifndef TUG_CLI_COMMANDS_HPP
#define TUG_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tug::cli {

/// Exit codes: 0 success, 1 input error (diagnostics on err), 2 size guard
/// exceeded, 3 internal invariant failure (solver bug).
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kSizeGuard = 2;
inline constexpr int kInternalError = 3;

/// Runs one command line (without argv[0]); reports go to `out`, diagnostics
/// to `err`. Deterministic: identical inputs and flags produce byte-identical
/// reports.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tug::cli

#endif  // TUG_CLI_COMMANDS_HPP
