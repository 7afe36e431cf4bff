#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oschar::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,         // identities hold / verdict consistent / below threshold
  kDifference = 1, // residual found / verdict rejected / densities differ
  kError = 2,      // invalid configuration or runtime failure
};

/// Runs the `oschar` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace oschar::cli
