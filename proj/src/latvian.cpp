#include "kwx/latvian.hpp"

#include <array>

#include "kwx/utf8.hpp"

namespace kwx {
namespace {

struct Affix {
  std::u32string_view suffix;
  int min_vowels;     // the word must contain more vowels than this
  bool palatalizes;   // removal may expose a palatalized consonant
};

// Checked in order; the first applicable entry wins.
constexpr std::array<Affix, 38> kAffixes = {{
    {U"ajiem", 3, false}, {U"ajai", 3, false}, {U"ajam", 2, false}, {U"ajām", 2, false},
    {U"ajos", 2, false},  {U"ajās", 2, false}, {U"iem", 2, true},   {U"ajā", 2, false},
    {U"ais", 2, false},   {U"ai", 2, false},   {U"ei", 2, false},   {U"ām", 1, false},
    {U"am", 1, false},    {U"ēm", 1, false},   {U"īm", 1, false},   {U"im", 1, false},
    {U"um", 1, false},    {U"us", 1, true},    {U"as", 1, false},   {U"ās", 1, false},
    {U"es", 1, false},    {U"os", 1, true},    {U"ij", 1, false},   {U"īs", 1, false},
    {U"ēs", 1, false},    {U"is", 1, false},   {U"ie", 1, false},   {U"u", 1, true},
    {U"a", 1, true},      {U"i", 1, true},     {U"e", 1, false},    {U"ā", 1, false},
    {U"ē", 1, false},     {U"ī", 1, false},    {U"ū", 1, false},    {U"o", 1, false},
    {U"s", 0, false},     {U"š", 0, false},
}};

constexpr std::size_t kMinStemLength = 3;

bool is_vowel(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
    case U'ā': case U'ī': case U'ē': case U'ū':
      return true;
    default:
      return false;
  }
}

bool ends_with(const std::u32string& s, std::size_t len, std::u32string_view suffix) {
  return len >= suffix.size() && std::u32string_view(s.data() + len - suffix.size(), suffix.size()) == suffix;
}

// `len` is the stem length after suffix removal; s[len] is the first removed char.
std::size_t unpalatalize(std::u32string& s, std::size_t len) {
  if (s[len] == U'u') {
    // kš -> kst
    if (ends_with(s, len, U"kš")) {
      ++len;
      s[len - 2] = U's';
      s[len - 1] = U't';
      return len;
    }
    if (ends_with(s, len, U"ņņ")) {
      s[len - 2] = U'n';
      s[len - 1] = U'n';
      return len;
    }
  }

  if (ends_with(s, len, U"pj") || ends_with(s, len, U"bj") || ends_with(s, len, U"mj") ||
      ends_with(s, len, U"vj")) {
    return len - 1;  // labial consonant + j
  }
  constexpr std::array<std::pair<std::u32string_view, std::u32string_view>, 6> kPairs = {{
      {U"šņ", U"sn"}, {U"žņ", U"zn"}, {U"šļ", U"sl"}, {U"žļ", U"zl"}, {U"ļņ", U"ln"}, {U"ļļ", U"ll"},
  }};
  for (const auto& [from, to] : kPairs) {
    if (ends_with(s, len, from)) {
      s[len - 2] = to[0];
      s[len - 1] = to[1];
      return len;
    }
  }
  switch (s[len - 1]) {
    case U'č': s[len - 1] = U'c'; break;
    case U'ļ': s[len - 1] = U'l'; break;
    case U'ņ': s[len - 1] = U'n'; break;
    default: break;
  }
  return len;
}

}  // namespace

std::string latvian_stem(std::string_view word) {
  std::u32string s = utf8::decode(word);
  const std::size_t len = s.size();
  int vowels = 0;
  for (char32_t c : s) vowels += is_vowel(c) ? 1 : 0;

  for (const Affix& affix : kAffixes) {
    if (vowels > affix.min_vowels && len >= affix.suffix.size() + kMinStemLength &&
        ends_with(s, len, affix.suffix)) {
      std::size_t stem_len = len - affix.suffix.size();
      if (affix.palatalizes) stem_len = unpalatalize(s, stem_len);
      s.resize(stem_len);
      return utf8::encode(s);
    }
  }
  return std::string(word);
}

}  // namespace kwx
