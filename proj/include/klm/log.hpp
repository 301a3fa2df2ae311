#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace klm {

enum class LogLevel { Off = 0, Info = 1, Debug = 2 };

// Verbosity comes from the KLM_LOG environment variable: "info" or "debug".
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("KLM_LOG");
        if (!env) return LogLevel::Off;
        const std::string v(env);
        if (v == "debug" || v == "2") return LogLevel::Debug;
        if (v == "info" || v == "1") return LogLevel::Info;
        return LogLevel::Off;
    }();
    return level;
}

inline void log_line(LogLevel at, const std::string& msg) {
    if (static_cast<int>(log_level()) >= static_cast<int>(at)) {
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        std::cerr << "[klm] " << msg << "\n";
    }
}

}  // namespace klm
