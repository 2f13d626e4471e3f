#include "kwx/levenshtein.hpp"

#include <algorithm>
#include <vector>

#include "kwx/utf8.hpp"

namespace kwx {
namespace {

std::size_t distance(const std::u32string& a, const std::u32string& b) {
  if (a.size() < b.size()) return distance(b, a);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  return distance(utf8::decode(a), utf8::decode(b));
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
  const std::u32string ua = utf8::decode(a);
  const std::u32string ub = utf8::decode(b);
  const std::size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(distance(ua, ub)) / static_cast<double>(longest);
}

}  // namespace kwx
