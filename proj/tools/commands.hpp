#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogrowth::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,         // unparsable arguments or input (presentation, CSV, parameters)
  kWrongGroup = 3,    // a relator was (almost) never accepted; only with --strict
  kDiverged = 4,      // a walk exceeded --max-word-len
  kCoverageGap = 5,   // estimation stopped before --max-len
  kIo = 6,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  int threads = 0;  // 0: OpenMP default
  bool strict = false;
  std::vector<std::string> argv;  // arguments after the program name
};

/// Parses and runs one command line (without the program name). Returns the
/// process exit code; diagnostics go to stderr.
int run(const std::vector<std::string>& args);

}  // namespace cogrowth::cli
