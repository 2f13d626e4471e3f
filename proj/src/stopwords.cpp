#include "kwx/stopwords.hpp"

#include <fstream>
#include <sstream>

#include "kwx/error.hpp"

namespace kwx {
namespace detail {
extern const std::pair<std::string_view, std::string_view> kBuiltinStopwords[];
extern const std::size_t kBuiltinStopwordCount;
}  // namespace detail

namespace {

StopwordSet parse_lines(std::istream& in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    words.insert(line.substr(start));
  }
  return words;
}

}  // namespace

std::vector<std::string> builtin_stopword_languages() {
  std::vector<std::string> langs;
  for (std::size_t i = 0; i < detail::kBuiltinStopwordCount; ++i) {
    langs.emplace_back(detail::kBuiltinStopwords[i].first);
  }
  return langs;
}

StopwordSet builtin_stopwords(std::string_view lang) {
  for (std::size_t i = 0; i < detail::kBuiltinStopwordCount; ++i) {
    if (detail::kBuiltinStopwords[i].first == lang) {
      std::istringstream in{std::string(detail::kBuiltinStopwords[i].second)};
      return parse_lines(in);
    }
  }
  return {};
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file '" + path.string() + "'");
  return parse_lines(in);
}

}  // namespace kwx
