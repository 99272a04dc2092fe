#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace limitnerve::cli {

/// Exit statuses shared by every command.
enum Exit : int {
  kOk = 0,
  kInputError = 1,
  kUndecided = 2,
  kResource = 3,
  kValidation = 4,
};

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace limitnerve::cli
