#ifndef CONCUR_CLI_HPP
#define CONCUR_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace concur::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
    kOk = 0,          // valid input, success, or Certified
    kFailure = 1,     // invalid input, errors, failed verification
    kNotBisimilar = 2,
    kInconclusive = 3,
};

/**
 * Entry point of the `concur` tool. `args` excludes the program name.
 * Subcommands: validate, homology, bisim, construct, snf.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a byte string, used to identify inputs in reports.
std::string sha256_hex(const std::string& bytes);

}  // namespace concur::cli

#endif  // CONCUR_CLI_HPP
