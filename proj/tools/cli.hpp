#ifndef KRSMALL_TOOLS_CLI_HPP
#define KRSMALL_TOOLS_CLI_HPP

#include <ostream>

namespace krsmall::cli {

enum ExitCode : int {
  kOk = 0,
  kDisagreement = 1,
  kParseError = 2,
  kRemarkMismatch = 3,
  kBudgetPartial = 4,
};

/// Entry point of the `krsmall` tool, writing to the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace krsmall::cli

#endif
