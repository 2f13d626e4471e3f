#pragma once

#include <functional>
#include <string_view>

namespace kwx::log {

enum class Level { debug, info, warning, error };

using Sink = std::function<void(Level, std::string_view)>;

// Replaces the process-wide sink (stderr by default). Passing an empty
// function restores the default. Returns the previous sink.
Sink set_sink(Sink sink);

void write(Level level, std::string_view message);

inline void info(std::string_view message) { write(Level::info, message); }
inline void warn(std::string_view message) { write(Level::warning, message); }

}  // namespace kwx::log
