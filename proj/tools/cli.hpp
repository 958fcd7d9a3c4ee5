#pragma once

#include <iosfwd>

namespace linfix::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInconsistent = 2,
  kIoError = 3,
  kDisagreement = 4,
};

/// Entry point of the `linfix` tool with injectable streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace linfix::cli
