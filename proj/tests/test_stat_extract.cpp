#include <gtest/gtest.h>

#include <map>
#include <random>

#include "kwx/candidates.hpp"
#include "kwx/stat_extract.hpp"
#include "oracles.hpp"

using namespace kwx;

namespace {

Document doc(std::string text) { return Document{"d", "en", std::move(text), {}, Split::test}; }

TermFeatures features(std::size_t tf, double scale) {
  TermFeatures f;
  f.tf = tf;
  f.tf_norm = static_cast<double>(tf) / scale;
  f.casing = 0.5;
  f.position = std::log(std::log(3.0 + 1.0));
  f.relatedness = 1.4;
  f.dispersion = 0.5;
  return f;
}

struct RunStats {
  std::size_t tf = 0;
  std::size_t first = 0;
};

// Maximal non-stopword word runs counted straight from the token stream.
std::map<std::string, RunStats> count_runs(const std::vector<Token>& tokens) {
  std::map<std::string, RunStats> runs;
  std::size_t i = 0;
  auto word = [&](std::size_t j) { return tokens[j].has_letter && tokens[j].is_alphanumeric && !tokens[j].is_stopword; };
  while (i < tokens.size()) {
    if (!word(i)) {
      ++i;
      continue;
    }
    std::string norm = tokens[i].norm;
    std::size_t j = i + 1;
    for (; j < tokens.size() && word(j) && tokens[j].sent_idx == tokens[i].sent_idx; ++j) norm += " " + tokens[j].norm;
    RunStats& r = runs[norm];
    if (r.tf++ == 0) r.first = i;
    i = j;
  }
  return runs;
}

}  // namespace

TEST(YakeTermScore, HigherTfScoresLower) {
  const double scale = 2.0;
  EXPECT_LT(yake_term_score(features(5, scale)), yake_term_score(features(1, scale)));
}

TEST(YakeTermScore, MatchesFormula) {
  TermFeatures f = features(3, 2.0);
  const double expected = f.relatedness * f.position /
                          (f.casing + f.tf_norm / f.relatedness + f.dispersion / f.relatedness);
  EXPECT_DOUBLE_EQ(yake_term_score(f), expected);
}

TEST(YakeTermScore, DispersionSitsInTheDenominator) {
  TermFeatures narrow = features(3, 2.0), wide = features(3, 2.0);
  narrow.dispersion = 0.1;
  wide.dispersion = 0.9;
  EXPECT_LT(yake_term_score(wide), yake_term_score(narrow));
}

TEST(Yake, RepeatedWordGivesOneCandidate) {
  const auto out = yake(doc("a a a"), Normalizer::identity(), 10);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].phrase, "a");
  EXPECT_EQ(out[0].better, ScoreOrder::lower_is_better);
}

TEST(Yake, FewerCandidatesThanK) {
  EXPECT_EQ(yake(doc("river. mountain. cloud. engine."), Normalizer::identity(), 10).size(), 4u);
}

TEST(Yake, EmptyDocument) { EXPECT_TRUE(yake(doc(""), Normalizer::identity(), 10).empty()); }

TEST(Yake, FlagsNeutralizedCasing) {
  EXPECT_TRUE(yake_extract(doc("all lower case text here"), Normalizer::identity()).casing_neutralized);
  EXPECT_FALSE(yake_extract(doc("Riga is in Latvia"), Normalizer::identity()).casing_neutralized);
}

TEST(Yake, DropsNearDuplicates) {
  const auto out = yake(doc("Solar panels. Solar panel. Solar panels power homes."), Normalizer::identity(), 10);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) EXPECT_NE(out[i].phrase, out[j].phrase);
  }
  int solar_panel_like = 0;
  for (const auto& kw : out) solar_panel_like += kw.phrase == "Solar panel" || kw.phrase == "Solar panels";
  EXPECT_EQ(solar_panel_like, 1);
}

TEST(Yake, PositiveSortedDeterministic) {
  std::mt19937_64 rng(3);
  const Normalizer n = Normalizer::for_language("en");
  for (int round = 0; round < 40; ++round) {
    const Document d = doc(oracle::random_text(rng, 150));
    const auto a = yake(d, n, 10);
    const auto b = yake(d, n, 10);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_LE(a.size(), 10u);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_GT(a[i].score, 0.0);
      EXPECT_EQ(a[i].phrase, b[i].phrase);
      EXPECT_EQ(a[i].score, b[i].score);
      if (i) {
        EXPECT_LE(a[i - 1].score, a[i].score);
      }
    }
  }
}

TEST(KpMinerBoost, ClampsAtSigma) {
  EXPECT_DOUBLE_EQ(kpminer_boost(10, 0, 2.3, 3.0), 3.0);
  EXPECT_DOUBLE_EQ(kpminer_boost(100, 1, 2.3, 3.0), 3.0);
  EXPECT_DOUBLE_EQ(kpminer_boost(23, 5, 2.3, 3.0), 2.0);
}

TEST(KpMiner, BelowLasfIsFiltered) {
  EXPECT_TRUE(kpminer(doc("solar. solar."), Normalizer::identity()).empty());
}

TEST(KpMiner, LateFirstOccurrenceIsFiltered) {
  std::string text;
  for (int i = 0; i < 450; ++i) text += ", ";
  text += "late. late. late.";
  EXPECT_TRUE(kpminer(doc(text), Normalizer::identity()).empty());
  KpMinerOptions wide;
  wide.cutoff = 500;
  EXPECT_EQ(kpminer(doc(text), Normalizer::identity(), wide).size(), 1u);
}

TEST(KpMiner, SinglePassingCandidate) {
  // Only unigram occurrences: the boost is clamped at sigma, score = tf * sigma.
  const auto out = kpminer(doc("solar. solar. solar."), Normalizer::identity());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].phrase, "solar");
  EXPECT_DOUBLE_EQ(out[0].score, 3.0 * 3.0);
}

TEST(KpMiner, ReturnedPhrasesPassFilters) {
  std::mt19937_64 rng(5);
  const Normalizer n = Normalizer::for_language("en");
  for (int round = 0; round < 60; ++round) {
    const Document d = doc(oracle::random_text(rng, 700));
    const auto runs = count_runs(n.analyze(d.text));
    for (const ScoredKeyword& kw : kpminer(d, n)) {
      const auto it = runs.find(n.normalize_phrase(kw.phrase));
      ASSERT_NE(it, runs.end()) << kw.phrase;
      EXPECT_GE(it->second.tf, 3u);
      EXPECT_LT(it->second.first, 400u);
      EXPECT_GT(kw.score, 0.0);
    }
  }
}
