// SPDX-License-Identifier: Apache-2.0

#include "util.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace leftmost::cli {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* raw = std::getenv("LEFTMOST_LOG");
    if (raw == nullptr) return LogLevel::info;
    const std::string v(raw);
    if (v == "error") return LogLevel::error;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    std::cerr << "warning: unknown LEFTMOST_LOG value '" << v
              << "', using info\n";
    return LogLevel::info;
  }();
  return level;
}

void log_error(const std::string& msg) { std::cerr << "error: " << msg << "\n"; }

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::cerr << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug) std::cerr << "debug: " << msg << "\n";
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write failed for " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path + ": " +
                             ec.message());
  }
}

}  // namespace leftmost::cli
