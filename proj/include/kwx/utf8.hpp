#pragma once

#include <string>
#include <string_view>

namespace kwx::utf8 {

// Decodes UTF-8; invalid sequences become U+FFFD, one per offending byte.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
inline bool is_word_char(char32_t cp) { return is_letter(cp) || is_digit(cp); }
bool is_space(char32_t cp);

// Simple (one-to-one) case mapping covering Latin, Greek and Cyrillic.
char32_t to_lower(char32_t cp);
bool is_upper(char32_t cp);

std::string to_lower(std::string_view text);
std::u32string to_lower(std::u32string_view text);

// Number of code points.
std::size_t length(std::string_view text);

}  // namespace kwx::utf8
