#include "kwx/ranking.hpp"

#include <algorithm>

namespace kwx {

void sort_ranked(std::vector<RankedPhrase>& items, ScoreOrder order) {
  std::stable_sort(items.begin(), items.end(), [order](const RankedPhrase& a, const RankedPhrase& b) {
    if (a.score != b.score) {
      return order == ScoreOrder::lower_is_better ? a.score < b.score : a.score > b.score;
    }
    if (a.first_pos != b.first_pos) return a.first_pos < b.first_pos;
    return a.norm < b.norm;
  });
}

std::vector<ScoredKeyword> finalize_ranking(std::vector<RankedPhrase> items, ScoreOrder order, std::size_t k) {
  sort_ranked(items, order);
  if (items.size() > k) items.resize(k);
  std::vector<ScoredKeyword> out;
  out.reserve(items.size());
  for (RankedPhrase& item : items) out.push_back({std::move(item.phrase), item.score, order});
  return out;
}

}  // namespace kwx
