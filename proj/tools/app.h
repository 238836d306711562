#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace corrlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUnexpected = 1,
  kExitUsage = 2,
  kExitResource = 3,
  kExitVerification = 4,
};

/// Environment variable naming the directory for relative --out and --witness paths.
inline constexpr const char* kOutDirEnv = "CORRLAB_OUT_DIR";

/// Exit status for a failure raised while executing a command; writes a one-line message to err.
int report_failure(const std::exception_ptr& failure, std::ostream& err);

/// Runs one command line (program name excluded) and returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corrlab::cli
