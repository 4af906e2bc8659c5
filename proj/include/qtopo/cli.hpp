#pragma once

#include <iosfwd>

namespace qtopo::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 2,
  kNumericFailure = 3,
  kOracleDisagreement = 4,
};

/// Entry point of the command-line tool. Results go to `out` (or --output),
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qtopo::cli
