#include "flexh/logging.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <mutex>

namespace flexh {

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("FLEXH_LOG_LEVEL");
    if (!env) return LogLevel::Info;
    if (std::strcmp(env, "error") == 0) return LogLevel::Error;
    if (std::strcmp(env, "warn") == 0) return LogLevel::Warn;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    return LogLevel::Info;
  }();
  return level;
}

void log(LogLevel level, const std::string& message) {
  if (level > log_level()) return;
  static std::mutex mutex;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::lock_guard<std::mutex> lock(mutex);
  std::cerr << "[" << names[static_cast<int>(level)] << "] " << message << "\n";
}

}  // namespace flexh
