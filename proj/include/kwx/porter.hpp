#pragma once

#include <string>
#include <string_view>

namespace kwx {

// Porter (1980) suffix-stripping stemmer, steps 1a-5b, following the
// behaviour of Martin Porter's reference C implementation (including its
// "bli" -> "ble" and "logi" -> "log" departures). Expects a lowercased word;
// words of one or two characters are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace kwx
