#pragma once

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>
#include <string_view>

// Leveled logging to stderr, controlled by the EPITOPIC_LOG environment
// variable: error | warn | info (default) | debug.

namespace epitopic {

enum class LogLevel : int { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

inline LogLevel& log_threshold() {
    static LogLevel level = [] {
        const char* env = std::getenv("EPITOPIC_LOG");
        if (!env) return LogLevel::kInfo;
        std::string_view v{env};
        if (v == "error") return LogLevel::kError;
        if (v == "warn") return LogLevel::kWarn;
        if (v == "debug") return LogLevel::kDebug;
        return LogLevel::kInfo;
    }();
    return level;
}

inline void log_line(LogLevel level, std::string_view msg) {
    if (static_cast<int>(level) > static_cast<int>(log_threshold())) return;
    static std::mutex mu;
    static constexpr const char* names[] = {"error", "warn", "info", "debug"};
    std::lock_guard<std::mutex> lock(mu);
    std::fprintf(stderr, "[%s] %.*s\n", names[static_cast<int>(level)],
                 static_cast<int>(msg.size()), msg.data());
}

inline void log_error(std::string_view msg) { log_line(LogLevel::kError, msg); }
inline void log_warn(std::string_view msg) { log_line(LogLevel::kWarn, msg); }
inline void log_info(std::string_view msg) { log_line(LogLevel::kInfo, msg); }
inline void log_debug(std::string_view msg) { log_line(LogLevel::kDebug, msg); }

}  // namespace epitopic
