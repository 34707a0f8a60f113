#ifndef CURLSET_CLI_HPP
#define CURLSET_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace curlset {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification FAIL, probe violation, no construction
inline constexpr int kExitUsage = 2;    // bad flags or unreadable / invalid input files

/// Runs one subcommand. `args` excludes the program name. The run report
/// (JSON) goes to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, char** argv);

}  // namespace curlset

#endif  // CURLSET_CLI_HPP
