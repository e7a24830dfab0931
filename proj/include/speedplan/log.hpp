#ifndef SPEEDPLAN_LOG_HPP_
#define SPEEDPLAN_LOG_HPP_

#include <string>

namespace speedplan {

/// Stderr logging gated by the SPEEDPLAN_LOG environment variable
/// (none|error|warn|info|debug, default warn).
enum class LogLevel : int { None = 0, Error = 1, Warn = 2, Info = 3, Debug = 4 };

LogLevel log_level();
bool log_enabled(LogLevel level);
void log_message(LogLevel level, const std::string& msg);

}  // namespace speedplan

#endif  // SPEEDPLAN_LOG_HPP_
