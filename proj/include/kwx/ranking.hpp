#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kwx {

enum class ScoreOrder { lower_is_better, higher_is_better };

struct ScoredKeyword {
  std::string phrase;
  double score = 0.0;
  ScoreOrder better = ScoreOrder::higher_is_better;
};

// Internal ranking record: ties are broken by first occurrence, then by norm.
struct RankedPhrase {
  std::string phrase;
  std::string norm;
  double score = 0.0;
  std::size_t first_pos = 0;
};

// Sorts best-first under (score, first_pos, norm).
void sort_ranked(std::vector<RankedPhrase>& items, ScoreOrder order);

// Sorts, truncates to k and converts.
std::vector<ScoredKeyword> finalize_ranking(std::vector<RankedPhrase> items, ScoreOrder order, std::size_t k);

}  // namespace kwx
