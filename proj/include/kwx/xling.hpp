#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kwx/hclust.hpp"

namespace kwx {

/// Ordered, duplicate-free list of language codes.
class LanguageSet {
 public:
  explicit LanguageSet(std::vector<std::string> langs);
  // en, sl, hr, lv, et, ru
  static LanguageSet six_news_languages();

  const std::vector<std::string>& langs() const { return langs_; }
  std::size_t size() const { return langs_.size(); }
  bool contains(std::string_view lang) const;

 private:
  std::vector<std::string> langs_;
};

using LanguageTuple = std::vector<std::string>;

// All k-subsets, in lexicographic order of positions in the set.
// Throws UsageError unless 1 <= k <= |langs|.
std::vector<LanguageTuple> enumerate_tuples(const LanguageSet& langs, std::size_t k);

std::string join_langs(const LanguageTuple& tuple, std::string_view sep = "+");

enum class Regime { mon, loo, mul, custom };

std::string_view to_string(Regime regime);  // "MON", "LOO", "MUL", "CUSTOM"
Regime parse_regime(std::string_view name);  // case-insensitive

struct ExperimentManifest {
  std::string name;
  Regime regime = Regime::mon;
  LanguageTuple train_langs;
  std::string test_lang;
  std::vector<std::string> train_files;
  std::vector<std::string> valid_files;
  std::vector<std::string> test_files;
};

struct ManifestOptions {
  bool check_files = true;      // every referenced split file must exist
  LanguageTuple custom_train;   // training languages for Regime::custom
};

// Names are "<REGIME>-test=<lang>", or "CUSTOM-train=<a+b>-test=<lang>".
// Files are `<data_root>/<lang>.<split>.jsonl`.
ExperimentManifest build_manifest(Regime regime, const LanguageSet& langs, std::string_view test_lang,
                                  const std::filesystem::path& data_root, const ManifestOptions& options = {});

std::string manifest_to_json(const ExperimentManifest& manifest);

struct TupleResult {
  LanguageTuple train_langs;
  double f1 = 0.0;
};

struct CurveGroup {
  std::size_t k = 0;  // number of training languages
  double best = 0.0;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  std::vector<TupleResult> points;  // input order
};

// Groups results by tuple size, ascending. Throws UsageError when a tuple
// contains the test language.
std::vector<CurveGroup> language_count_curve(const std::vector<TupleResult>& results, std::string_view test_lang);

std::string curve_to_json(const std::vector<CurveGroup>& curve, std::string_view test_lang);

struct AffinityMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;  // row = train language, column = test language
};

// d(i, j) = 1 - (m[i][j] + m[j][i]) / (2 * max entry); zero diagonal.
// Throws UsageError when the matrix is not square or has no positive entry.
DistanceMatrix affinity_to_distance(const AffinityMatrix& m);

struct DendrogramMerge {
  std::string left;   // member labels joined by '+'
  std::string right;
  double height = 0.0;
  std::size_t size = 0;
};

struct Dendrogram {
  Linkage linkage = Linkage::average;
  std::vector<std::string> labels;
  std::vector<MergeStep> steps;
  std::vector<DendrogramMerge> merges;
};

// Throws UsageError for fewer than two labels or a non-square matrix.
Dendrogram agglomerative_cluster(const AffinityMatrix& m, Linkage linkage = Linkage::average);

std::string dendrogram_to_json(const Dendrogram& dendrogram);

// Builds the train x test matrix of aggregate F1 values. Throws DataError
// naming the first missing (train, test) pair and for values outside [0, 1].
AffinityMatrix heatmap_matrix(const std::map<std::pair<std::string, std::string>, double>& f1,
                              const LanguageSet& langs);

// "<train>.<test>.metrics.json"
std::string report_file_name(std::string_view train_lang, std::string_view test_lang);

void write_matrix_csv(std::ostream& out, const AffinityMatrix& m);
AffinityMatrix read_matrix_csv(std::istream& in, std::string_view source = "<csv>");

}  // namespace kwx
