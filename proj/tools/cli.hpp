#pragma once

#include <iosfwd>

namespace exunit::cli {

/// Exit codes: 0 success, 1 verification mismatch, 2 input error,
/// 3 requested method inapplicable.
enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2, kInapplicable = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace exunit::cli
