#pragma once

#include <string>
#include <vector>

namespace cpaths::cli {

struct Outcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one command line. `args` excludes the program name.
/// Exit codes: 0 success, 1 `equal` mismatch or `check` failure, 2 usage,
/// parse or validation errors.
Outcome run(const std::vector<std::string>& args);

}  // namespace cpaths::cli
