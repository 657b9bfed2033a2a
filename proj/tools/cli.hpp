#pragma once

#include <string>
#include <vector>

#include "multfree/json_io.hpp"

namespace multfree::cli {

enum class Status { ok, error };

struct CommandResult {
  Status status = Status::ok;
  io::Json payload;
  std::vector<std::string> diagnostics;
  int exit_code = 0;  // 0 ok, 1 malformed input or usage, 2 violated precondition
};

// argv[0] is the program name.
CommandResult dispatch(const std::vector<std::string>& argv);

// Prints the payload (stdout) and diagnostics (stderr); returns the exit code.
int emit(const CommandResult& r);

}  // namespace multfree::cli
