#pragma once

#include <string_view>

namespace kwx {

// Unit-cost insert/delete/substitute distance over code points.
std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - distance / max(length); 1.0 for two empty strings.
double levenshtein_similarity(std::string_view a, std::string_view b);

}  // namespace kwx
