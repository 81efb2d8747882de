#pragma once

#include <sstream>
#include <string>

namespace zonal {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

// Threshold comes from PLANNER_LOG={error,info,debug}; default error.
LogLevel log_threshold();
bool log_enabled(LogLevel level);
void log_message(LogLevel level, const std::string& msg);

template <typename... Args>
void log_line(LogLevel level, Args&&... args) {
  if (!log_enabled(level)) return;
  std::ostringstream os;
  (os << ... << args);
  log_message(level, os.str());
}

}  // namespace zonal
