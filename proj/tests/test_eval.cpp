#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "kwx/error.hpp"
#include "kwx/eval.hpp"
#include "oracles.hpp"

using namespace kwx;

namespace {

Document doc(std::string id, std::string text, std::vector<std::string> keywords) {
  return Document{std::move(id), "en", std::move(text), std::move(keywords), Split::test};
}

Prediction pred(std::string id, std::vector<std::string> phrases) {
  Prediction p{std::move(id), {}};
  for (auto& s : phrases) p.keywords.push_back({std::move(s), 0.0, ScoreOrder::higher_is_better});
  return p;
}

Normalizer stemmer() { return Normalizer("en", NormMode::porter_stem, {}); }

}  // namespace

TEST(PresentGold, StemmedMatch) {
  EXPECT_EQ(present_gold(doc("1", "Many red cars here", {"red car"}), stemmer()), std::set<std::string>{"red car"});
}

TEST(PresentGold, RequiresContiguity) {
  EXPECT_TRUE(present_gold(doc("1", "the moon has a base", {"moon base"}), stemmer()).empty());
}

TEST(PresentGold, DeduplicatesOnNormalizedForm) {
  EXPECT_EQ(present_gold(doc("1", "red cars", {"red car", "Red Cars", "red cars"}), stemmer()).size(), 1u);
}

TEST(ScoreAtK, WorkedExample) {
  const std::set<std::string> gold = {"a", "b", "c"};
  const auto s = score_at_k({"a", "b", "x", "y", "z", "u", "v", "w", "q", "r"}, gold, Normalizer::identity(), 10);
  EXPECT_NEAR(s.precision, 0.2, 1e-12);
  EXPECT_NEAR(s.recall, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.f1, 2 * 0.2 * (2.0 / 3.0) / (0.2 + 2.0 / 3.0), 1e-12);
  EXPECT_NEAR(s.f1, 0.3077, 1e-4);
}

TEST(ScoreAtK, PerfectAndDisjoint) {
  const std::set<std::string> gold = {"a", "b"};
  const auto perfect = score_at_k({"b", "a"}, gold, Normalizer::identity());
  EXPECT_DOUBLE_EQ(perfect.precision, 1.0);
  EXPECT_DOUBLE_EQ(perfect.recall, 1.0);
  EXPECT_DOUBLE_EQ(perfect.f1, 1.0);
  const auto none = score_at_k({"x", "y"}, gold, Normalizer::identity());
  EXPECT_DOUBLE_EQ(none.f1, 0.0);
  const auto empty = score_at_k({}, gold, Normalizer::identity());
  EXPECT_DOUBLE_EQ(empty.precision, 0.0);
  EXPECT_DOUBLE_EQ(empty.recall, 0.0);
  EXPECT_DOUBLE_EQ(empty.f1, 0.0);
}

TEST(ScoreAtK, BothPrecisionConventions) {
  const auto s = score_at_k({"a", "x"}, {"a", "b"}, Normalizer::identity(), 10);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.precision_fixed_k, 0.1);
  EXPECT_EQ(s.considered, 2u);
}

TEST(ScoreAtK, NormalizesAndDeduplicatesPredictions) {
  // "Red Cars" and "red car" collapse; the duplicate does not use a slot of the precision denominator.
  const auto s = score_at_k({"Red Cars", "red car", "blue bus"}, {"red car"}, stemmer(), 10);
  EXPECT_EQ(s.considered, 2u);
  EXPECT_EQ(s.matches, 1u);
}

TEST(ScoreAtK, MatchesSetOracle) {
  std::mt19937_64 rng(21);
  const Normalizer n = Normalizer::identity();
  for (int i = 0; i < 2000; ++i) {
    std::set<std::string> gold;
    std::vector<std::string> predicted;
    for (std::size_t g = 1 + rng() % 20; g > 0; --g) gold.insert("w" + std::to_string(rng() % 30));
    for (std::size_t p = rng() % 21; p > 0; --p) predicted.push_back("w" + std::to_string(rng() % 30));
    const std::size_t k = 1 + rng() % 20;
    const auto got = score_at_k(predicted, gold, n, k);
    const auto want = oracle::set_score(predicted, gold, k);
    EXPECT_EQ(got.precision, want.precision);
    EXPECT_EQ(got.recall, want.recall);
    EXPECT_EQ(got.f1, want.f1);
  }
}

TEST(ScoreAtK, RecallMonotoneInK) {
  std::mt19937_64 rng(22);
  const Normalizer n = Normalizer::identity();
  for (int i = 0; i < 500; ++i) {
    std::set<std::string> gold;
    std::vector<std::string> predicted;
    for (std::size_t g = 1 + rng() % 10; g > 0; --g) gold.insert("w" + std::to_string(rng() % 15));
    for (std::size_t p = rng() % 20; p > 0; --p) predicted.push_back("w" + std::to_string(rng() % 15));
    double previous = 0.0;
    for (std::size_t k = 1; k <= 20; ++k) {
      const double r = score_at_k(predicted, gold, n, k).recall;
      EXPECT_GE(r, previous);
      previous = r;
    }
  }
}

TEST(ScoreAtK, NormalizingTwiceChangesNothing) {
  const Normalizer n = Normalizer::for_language("en");
  const std::vector<std::string> predicted = {"generalizations", "running dogs", "relational databases", "cats"};
  std::vector<std::string> twice;
  for (const auto& p : predicted) twice.push_back(n.normalize_phrase(p));
  const std::set<std::string> gold = {n.normalize_phrase("relational database"), n.normalize_phrase("cat")};
  std::set<std::string> gold_twice;
  for (const auto& g : gold) gold_twice.insert(n.normalize_phrase(g));
  const auto a = score_at_k(predicted, gold, n);
  const auto b = score_at_k(twice, gold_twice, n);
  EXPECT_EQ(a.precision, b.precision);
  EXPECT_EQ(a.recall, b.recall);
  EXPECT_EQ(a.matches, 2u);
}

TEST(EvaluateRun, OmitsDocumentsWithoutPresentGold) {
  const std::vector<Document> corpus = {doc("1", "solar panels", {"solar panel"}), doc("2", "wind", {"moon"}),
                                        doc("3", "empty", {})};
  const auto report = evaluate_run({pred("1", {"solar panel"}), pred("2", {"wind"})}, corpus, stemmer());
  EXPECT_EQ(report.omitted, 2u);
  ASSERT_EQ(report.per_doc.size(), 1u);
  EXPECT_DOUBLE_EQ(report.aggregate.f1, 1.0);
}

TEST(EvaluateRun, MacroMean) {
  // a: one gold, four predictions, one hit -> p 0.25, r 1, f1 0.4
  // b: three gold, two predictions, two hits -> p 1, r 2/3, f1 0.8
  const std::vector<Document> corpus = {doc("a", "g one x", {"g"}), doc("b", "g h i", {"g", "h", "i"})};
  const auto report = evaluate_run({pred("a", {"g", "x1", "x2", "x3"}), pred("b", {"g", "h"})}, corpus,
                                   Normalizer::identity());
  ASSERT_EQ(report.per_doc.size(), 2u);
  EXPECT_NEAR(report.per_doc[0].f1, 0.4, 1e-12);
  EXPECT_NEAR(report.per_doc[1].f1, 0.8, 1e-12);
  EXPECT_NEAR(report.aggregate.f1, 0.6, 1e-12);
}

TEST(EvaluateRun, MissingPredictionScoresZero) {
  const std::vector<Document> corpus = {doc("1", "solar", {"solar"}), doc("2", "wind", {"wind"})};
  const auto report = evaluate_run({pred("1", {"solar"})}, corpus, Normalizer::identity());
  ASSERT_EQ(report.per_doc.size(), 2u);
  EXPECT_DOUBLE_EQ(report.per_doc[1].f1, 0.0);
  EXPECT_DOUBLE_EQ(report.aggregate.f1, 0.5);
}

TEST(EvaluateRun, UnknownOrDuplicateIds) {
  const std::vector<Document> corpus = {doc("1", "solar", {"solar"})};
  try {
    evaluate_run({pred("zz", {})}, corpus, Normalizer::identity());
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
  }
  EXPECT_THROW(evaluate_run({pred("1", {}), pred("1", {})}, corpus, Normalizer::identity()), DataError);
}

TEST(Predictions, ParseAndWrite) {
  std::stringstream buffer;
  write_prediction(buffer, pred("a", {"solar panel", "wind"}));
  buffer << "\n{\"id\":\"b\",\"keywords\":[\"plain\"]}\n";
  const auto parsed = parse_predictions(buffer);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].keywords[1].phrase, "wind");
  EXPECT_EQ(parsed[1].keywords[0].phrase, "plain");
  std::istringstream bad("{\"id\":\"a\"}\n");
  EXPECT_THROW(parse_predictions(bad), DataError);
}

TEST(Report, JsonRoundTrip) {
  const std::vector<Document> corpus = {doc("1", "solar panels", {"solar panel"}), doc("2", "x", {})};
  const auto report = evaluate_run({pred("1", {"solar panel", "x"})}, corpus, stemmer());
  const std::string json = report_to_json(report);
  EXPECT_NE(json.find("\"averaging\": \"macro\""), std::string::npos);
  const auto back = report_from_json(json);
  EXPECT_EQ(back.omitted, 1u);
  EXPECT_EQ(back.per_doc.size(), 1u);
  EXPECT_DOUBLE_EQ(back.aggregate.f1, report.aggregate.f1);
  EXPECT_DOUBLE_EQ(back.aggregate.precision_fixed_k, report.aggregate.precision_fixed_k);
  EXPECT_THROW(report_from_json("{}"), DataError);
}
