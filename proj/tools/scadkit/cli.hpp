#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scadkit::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,
  kUsage = 2,
  kIoError = 3,
};

/// Runs one command line. `args` excludes the program name. Results go to
/// `out` unless `-o` names a file; diagnostics always go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scadkit::cli
