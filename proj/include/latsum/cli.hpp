#ifndef LATSUM_CLI_HPP
#define LATSUM_CLI_HPP

#include <ostream>

namespace latsum
{

/// Exit codes of the command-line front end.
enum ExitCode : int
{
    exit_ok = 0,
    exit_certify_failed = 1,
    exit_usage = 2,
    exit_computation = 3
};

/// Runs the CLI with the given arguments; data goes to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace latsum

#endif
