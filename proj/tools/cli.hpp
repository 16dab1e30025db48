#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lqw::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidArguments = 2,
  kCapReached = 3,
  kUnwritablePath = 4,
};

/// Entry point behind the `lqw` executable. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lqw::cli
