#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "kwx/corpus.hpp"
#include "kwx/normalize.hpp"
#include "kwx/ranking.hpp"

namespace kwx {

// Gold keyphrases whose normalized token sequence occurs contiguously in the
// normalized document, as space-joined norms.
std::set<std::string> present_gold(const Document& doc, const Normalizer& normalizer);

struct ScoreAtK {
  double precision = 0.0;          // matches / predictions considered
  double recall = 0.0;             // matches / |gold|
  double f1 = 0.0;
  double precision_fixed_k = 0.0;  // matches / k
  double f1_fixed_k = 0.0;
  std::size_t matches = 0;
  std::size_t considered = 0;      // distinct normalized predictions among the first k
};

double f1_score(double precision, double recall);

// Predictions are truncated to k, normalized and deduplicated in rank order
// before matching against `gold_present` (normalized phrases).
ScoreAtK score_at_k(const std::vector<std::string>& predicted, const std::set<std::string>& gold_present,
                    const Normalizer& normalizer, std::size_t k = 10);

struct Prediction {
  std::string id;
  std::vector<ScoredKeyword> keywords;  // best first
};

// `{"id": str, "keywords": [{"phrase": str, "score": float}, ...]}` per line.
std::vector<Prediction> parse_predictions(std::istream& in, std::string_view source = "<stream>");
std::vector<Prediction> load_predictions(const std::filesystem::path& path);
void write_prediction(std::ostream& out, const Prediction& prediction);

struct DocMetrics {
  std::string id;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double precision_fixed_k = 0.0;
  double f1_fixed_k = 0.0;
  std::size_t n_gold_present = 0;
  std::size_t n_predicted = 0;
};

struct AggregateMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double precision_fixed_k = 0.0;
  double f1_fixed_k = 0.0;
};

struct MetricsReport {
  std::size_t k = 10;
  std::vector<DocMetrics> per_doc;  // corpus order, scored documents only
  AggregateMetrics aggregate;       // unweighted mean over per_doc
  std::size_t omitted = 0;          // documents without (present) gold keywords
};

// Documents of `corpus` without a prediction line are scored with an empty
// prediction. Throws DataError for prediction ids absent from the corpus and
// for repeated prediction ids.
MetricsReport evaluate_run(const std::vector<Prediction>& predictions, const std::vector<Document>& corpus,
                           const Normalizer& normalizer, std::size_t k = 10);
MetricsReport evaluate_run(const std::filesystem::path& predictions_file, const std::vector<Document>& corpus,
                           const Normalizer& normalizer, std::size_t k = 10);

std::string report_to_json(const MetricsReport& report);
MetricsReport report_from_json(std::string_view text, std::string_view source = "<report>");

}  // namespace kwx
