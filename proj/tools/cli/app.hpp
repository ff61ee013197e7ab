#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace leadsel::cli {

/// Exit codes are part of the command-line contract.
enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kInputError = 2,
  kBudgetExceeded = 3,
  kIdentityViolation = 4,
  kUnstable = 5,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Convenience for tests: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leadsel::cli
