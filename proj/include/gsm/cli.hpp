#ifndef GSM_CLI_HPP
#define GSM_CLI_HPP

#include <ostream>

namespace gsm {

// Exit codes of the command-line tool.
enum ExitCode {
  kExitOk = 0,
  kExitInputError = 1,
  kExitUnstable = 2,  // also: `validate` found an invalid instance
  kExitInfeasible = 3,
  kExitBlocking = 4,
};

// Subcommands: validate, solve, verify, trace, export-dot, gen.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace gsm

#endif  // GSM_CLI_HPP
