// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace leftmost::cli {

// Process exit codes, kept stable for scripting.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNotConverged = 2,
  kNumericalFailure = 3,
};

enum class LogLevel { error = 0, info = 1, debug = 2 };

// Level comes from LEFTMOST_LOG (error | info | debug), default info.
// Unknown values fall back to info with a warning.
LogLevel log_level();

// Messages go to stderr so command output on stdout stays clean.
void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

// Writes via a sibling temp file and rename, so readers never observe a
// partially written file. Throws std::runtime_error on I/O failure.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace leftmost::cli
