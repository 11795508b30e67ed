#ifndef TRILAYER_CLI_HPP
#define TRILAYER_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace trilayer::cli {

/// Every run ends with exactly one of these.
enum ExitCode : int {
    kOk = 0,
    kBadInvocation = 1,     ///< bad flags, unreadable or invalid config
    kNumericalFailure = 2,  ///< e.g. indeterminate ratio, unwritable output
    kNegativeVerdict = 3,   ///< incompatible / infeasible; not an error
};

/// Runs one subcommand. `args` excludes the program name. Artifacts without
/// an output path go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trilayer::cli

#endif  // TRILAYER_CLI_HPP
