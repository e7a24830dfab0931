#include "speedplan/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace speedplan {

namespace {

LogLevel parse_level() {
  const char* env = std::getenv("SPEEDPLAN_LOG");
  if (env == nullptr) return LogLevel::Warn;
  if (std::strcmp(env, "none") == 0) return LogLevel::None;
  if (std::strcmp(env, "error") == 0) return LogLevel::Error;
  if (std::strcmp(env, "warn") == 0) return LogLevel::Warn;
  if (std::strcmp(env, "info") == 0) return LogLevel::Info;
  if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
  return LogLevel::Warn;
}

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::Error: return "error";
    case LogLevel::Warn: return "warn";
    case LogLevel::Info: return "info";
    case LogLevel::Debug: return "debug";
    default: return "?";
  }
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level();
  return level;
}

bool log_enabled(LogLevel level) {
  return static_cast<int>(level) <= static_cast<int>(log_level());
}

void log_message(LogLevel level, const std::string& msg) {
  if (!log_enabled(level)) return;
  std::fprintf(stderr, "[speedplan %s] %s\n", level_name(level), msg.c_str());
}

}  // namespace speedplan
