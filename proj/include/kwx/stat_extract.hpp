#pragma once

#include <vector>

#include "kwx/corpus.hpp"
#include "kwx/normalize.hpp"
#include "kwx/ranking.hpp"

namespace kwx {

// Per-term statistics feeding the YAKE term score.
struct TermFeatures {
  std::size_t tf = 0;
  double tf_norm = 0.0;      // tf / (mean tf + stddev tf) over non-stopword terms
  double casing = 0.0;       // max(capitalized, acronym count) / (1 + ln tf)
  double position = 0.0;     // ln(ln(3 + median sentence index))
  double relatedness = 1.0;  // 1 + (WL + WR) * tf / max tf
  double dispersion = 0.0;   // fraction of sentences containing the term
};

// S(t) = relatedness * position / (casing + tf_norm / relatedness + dispersion / relatedness).
// Lower is better.
double yake_term_score(const TermFeatures& f);

struct YakeOptions {
  std::size_t k = 10;
  int max_ngram = 3;
  std::size_t window = 1;
  double dedup_similarity = 0.8;  // drop a phrase this similar to a better one
};

struct YakeResult {
  std::vector<ScoredKeyword> keywords;
  // Set when the text carried no uppercase letters and casing was fixed to 1.
  bool casing_neutralized = false;
};

YakeResult yake_extract(const Document& doc, const Normalizer& normalizer, const YakeOptions& options = {});

inline std::vector<ScoredKeyword> yake(const Document& doc, const Normalizer& normalizer, std::size_t k = 10) {
  YakeOptions options;
  options.k = k;
  return yake_extract(doc, normalizer, options).keywords;
}

struct KpMinerOptions {
  std::size_t k = 10;
  std::size_t lasf = 3;       // least allowable seen frequency
  std::size_t cutoff = 400;   // first occurrence must precede this token index
  double alpha = 2.3;
  double sigma = 3.0;
};

// Boosting factor min(all occurrences / (multi-word occurrences * alpha), sigma);
// sigma when there are no multi-word occurrences.
double kpminer_boost(std::size_t all_occurrences, std::size_t multiword_occurrences, double alpha, double sigma);

std::vector<ScoredKeyword> kpminer(const Document& doc, const Normalizer& normalizer,
                                   const KpMinerOptions& options = {});

}  // namespace kwx
