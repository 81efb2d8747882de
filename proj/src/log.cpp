#include "zonal/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace zonal {

LogLevel log_threshold() {
  static const LogLevel level = [] {
    const char* env = std::getenv("PLANNER_LOG");
    if (!env) return LogLevel::Error;
    std::string v(env);
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

bool log_enabled(LogLevel level) {
  return static_cast<int>(level) <= static_cast<int>(log_threshold());
}

void log_message(LogLevel level, const std::string& msg) {
  static std::mutex mu;
  static const char* names[] = {"error", "info", "debug"};
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

}  // namespace zonal
