#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

namespace gaugeprob::cli {

enum class LogLevel { Quiet = 0, Error = 1, Info = 2, Debug = 3 };

// GAUGEPROB_LOG: quiet|error|info|debug or 0..3. Unset means error.
inline LogLevel log_level_from(const char* value) {
  if (!value) return LogLevel::Error;
  const std::string_view v(value);
  if (v == "quiet" || v == "0") return LogLevel::Quiet;
  if (v == "info" || v == "2") return LogLevel::Info;
  if (v == "debug" || v == "3") return LogLevel::Debug;
  return LogLevel::Error;
}

inline LogLevel log_level() {
  static const LogLevel level = log_level_from(std::getenv("GAUGEPROB_LOG"));
  return level;
}

inline void log(LogLevel at, std::string_view message) {
  if (at == LogLevel::Quiet || static_cast<int>(at) > static_cast<int>(log_level())) return;
  static constexpr const char* names[] = {"", "error", "info", "debug"};
  std::cerr << "gaugeprob: " << names[static_cast<int>(at)] << ": " << message << '\n';
}

}  // namespace gaugeprob::cli
