#include "kwx/xling.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "kwx/corpus.hpp"
#include "kwx/error.hpp"

namespace kwx {
namespace {

using nlohmann::ordered_json;

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

// ------------------------------------------------------------ language sets

LanguageSet::LanguageSet(std::vector<std::string> langs) : langs_(std::move(langs)) {
  std::unordered_set<std::string> seen;
  for (const std::string& lang : langs_) {
    if (lang.empty()) throw UsageError("empty language code");
    if (!seen.insert(lang).second) throw UsageError("duplicate language '" + lang + "'");
  }
}

LanguageSet LanguageSet::six_news_languages() { return LanguageSet({"en", "sl", "hr", "lv", "et", "ru"}); }

bool LanguageSet::contains(std::string_view lang) const {
  return std::find(langs_.begin(), langs_.end(), lang) != langs_.end();
}

std::vector<LanguageTuple> enumerate_tuples(const LanguageSet& langs, std::size_t k) {
  const std::size_t n = langs.size();
  if (k < 1 || k > n) {
    throw UsageError("tuple size must be within 1.." + std::to_string(n) + ", got " + std::to_string(k));
  }
  std::vector<LanguageTuple> tuples;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    LanguageTuple t;
    for (std::size_t i : idx) t.push_back(langs.langs()[i]);
    tuples.push_back(std::move(t));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return tuples;
}

std::string join_langs(const LanguageTuple& tuple, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += sep;
    out += tuple[i];
  }
  return out;
}

// -------------------------------------------------------------- manifests

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::mon: return "MON";
    case Regime::loo: return "LOO";
    case Regime::mul: return "MUL";
    case Regime::custom: return "CUSTOM";
  }
  return "CUSTOM";
}

Regime parse_regime(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "mon") return Regime::mon;
  if (lower == "loo") return Regime::loo;
  if (lower == "mul") return Regime::mul;
  if (lower == "custom") return Regime::custom;
  throw UsageError("unknown regime '" + std::string(name) + "' (expected mon, loo, mul or custom)");
}

ExperimentManifest build_manifest(Regime regime, const LanguageSet& langs, std::string_view test_lang,
                                  const std::filesystem::path& data_root, const ManifestOptions& options) {
  if (!langs.contains(test_lang)) {
    throw UsageError("test language '" + std::string(test_lang) + "' is not in the language set");
  }
  ExperimentManifest m;
  m.regime = regime;
  m.test_lang = std::string(test_lang);
  switch (regime) {
    case Regime::mon:
      m.train_langs = {m.test_lang};
      break;
    case Regime::loo:
      for (const std::string& lang : langs.langs()) {
        if (lang != test_lang) m.train_langs.push_back(lang);
      }
      break;
    case Regime::mul:
      m.train_langs = langs.langs();
      break;
    case Regime::custom:
      if (options.custom_train.empty()) throw UsageError("custom regime needs training languages");
      for (const std::string& lang : langs.langs()) {
        if (std::find(options.custom_train.begin(), options.custom_train.end(), lang) != options.custom_train.end()) {
          m.train_langs.push_back(lang);
        }
      }
      for (const std::string& lang : options.custom_train) {
        if (!langs.contains(lang)) throw UsageError("training language '" + lang + "' is not in the language set");
      }
      break;
  }
  m.name = std::string(to_string(regime));
  if (regime == Regime::custom) m.name += "-train=" + join_langs(m.train_langs);
  m.name += "-test=" + m.test_lang;

  auto file = [&](const std::string& lang, Split split) {
    const std::filesystem::path path = data_root / corpus_file_name(lang, split);
    if (options.check_files && !std::filesystem::exists(path)) {
      throw DataError("missing split file '" + path.generic_string() + "'");
    }
    return path.generic_string();
  };
  for (const std::string& lang : m.train_langs) m.train_files.push_back(file(lang, Split::train));
  for (const std::string& lang : m.train_langs) m.valid_files.push_back(file(lang, Split::valid));
  m.test_files.push_back(file(m.test_lang, Split::test));
  return m;
}

std::string manifest_to_json(const ExperimentManifest& m) {
  ordered_json obj;
  obj["name"] = m.name;
  obj["regime"] = std::string(to_string(m.regime));
  obj["train_langs"] = m.train_langs;
  obj["test_lang"] = m.test_lang;
  obj["train_files"] = m.train_files;
  obj["valid_files"] = m.valid_files;
  obj["test_files"] = m.test_files;
  return obj.dump(2) + "\n";
}

// ------------------------------------------------------------------ curve

std::vector<CurveGroup> language_count_curve(const std::vector<TupleResult>& results, std::string_view test_lang) {
  std::map<std::size_t, CurveGroup> groups;
  for (const TupleResult& r : results) {
    if (r.train_langs.empty()) throw UsageError("result with an empty training tuple");
    if (std::find(r.train_langs.begin(), r.train_langs.end(), test_lang) != r.train_langs.end()) {
      throw UsageError("training tuple " + join_langs(r.train_langs) + " contains the test language '" +
                       std::string(test_lang) + "'");
    }
    CurveGroup& g = groups[r.train_langs.size()];
    g.k = r.train_langs.size();
    g.points.push_back(r);
  }
  std::vector<CurveGroup> curve;
  for (auto& [k, g] : groups) {
    std::vector<double> values;
    for (const TupleResult& p : g.points) values.push_back(p.f1);
    std::sort(values.begin(), values.end());
    g.min = values.front();
    g.max = g.best = values.back();
    const std::size_t n = values.size();
    g.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    curve.push_back(std::move(g));
  }
  return curve;
}

std::string curve_to_json(const std::vector<CurveGroup>& curve, std::string_view test_lang) {
  ordered_json obj;
  obj["test_lang"] = std::string(test_lang);
  obj["groups"] = ordered_json::array();
  for (const CurveGroup& g : curve) {
    ordered_json group;
    group["k"] = g.k;
    group["best"] = g.best;
    group["min"] = g.min;
    group["max"] = g.max;
    group["median"] = g.median;
    group["points"] = ordered_json::array();
    for (const TupleResult& p : g.points) group["points"].push_back({{"train", join_langs(p.train_langs)}, {"f1", p.f1}});
    obj["groups"].push_back(std::move(group));
  }
  return obj.dump(2) + "\n";
}

// ------------------------------------------------------------- clustering

DistanceMatrix affinity_to_distance(const AffinityMatrix& m) {
  const std::size_t n = m.labels.size();
  if (m.values.size() != n) throw UsageError("affinity matrix has " + std::to_string(m.values.size()) +
                                             " rows for " + std::to_string(n) + " labels");
  double max_entry = 0.0;
  for (const auto& row : m.values) {
    if (row.size() != n) throw UsageError("affinity matrix is not square");
    for (double v : row) max_entry = std::max(max_entry, v);
  }
  if (max_entry <= 0.0) throw UsageError("affinity matrix has no positive entry");
  DistanceMatrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) d[i][j] = 1.0 - (m.values[i][j] + m.values[j][i]) / (2.0 * max_entry);
    }
  }
  return d;
}

Dendrogram agglomerative_cluster(const AffinityMatrix& m, Linkage linkage) {
  if (m.labels.size() < 2) throw UsageError("clustering needs at least two labels");
  Dendrogram dendrogram;
  dendrogram.linkage = linkage;
  dendrogram.labels = m.labels;
  dendrogram.steps = agglomerate(affinity_to_distance(m), linkage);
  std::vector<std::string> names = m.labels;
  for (const MergeStep& step : dendrogram.steps) {
    dendrogram.merges.push_back({names[step.left], names[step.right], step.height, step.size});
    names.push_back(names[step.left] + "+" + names[step.right]);
  }
  return dendrogram;
}

std::string dendrogram_to_json(const Dendrogram& dendrogram) {
  ordered_json obj;
  obj["labels"] = dendrogram.labels;
  obj["linkage"] = std::string(to_string(dendrogram.linkage));
  obj["distance"] = "1 - (m[i][j] + m[j][i]) / (2 * max(m))";
  obj["merges"] = ordered_json::array();
  for (std::size_t i = 0; i < dendrogram.merges.size(); ++i) {
    const DendrogramMerge& merge = dendrogram.merges[i];
    obj["merges"].push_back({{"left", merge.left},
                             {"right", merge.right},
                             {"height", merge.height},
                             {"size", merge.size},
                             {"left_id", dendrogram.steps[i].left},
                             {"right_id", dendrogram.steps[i].right}});
  }
  return obj.dump(2) + "\n";
}

// ---------------------------------------------------------------- heatmap

AffinityMatrix heatmap_matrix(const std::map<std::pair<std::string, std::string>, double>& f1,
                              const LanguageSet& langs) {
  AffinityMatrix m;
  m.labels = langs.langs();
  for (const std::string& train : m.labels) {
    std::vector<double> row;
    for (const std::string& test : m.labels) {
      const auto it = f1.find({train, test});
      if (it == f1.end()) throw DataError("missing report for pair (train=" + train + ", test=" + test + ")");
      if (!(it->second >= 0.0 && it->second <= 1.0)) {
        throw DataError("F1 for (train=" + train + ", test=" + test + ") is outside [0, 1]");
      }
      row.push_back(it->second);
    }
    m.values.push_back(std::move(row));
  }
  return m;
}

std::string report_file_name(std::string_view train_lang, std::string_view test_lang) {
  return std::string(train_lang) + "." + std::string(test_lang) + ".metrics.json";
}

void write_matrix_csv(std::ostream& out, const AffinityMatrix& m) {
  out << "train\\test";
  for (const std::string& label : m.labels) out << ',' << label;
  out << '\n';
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << m.labels[i];
    for (double v : m.values[i]) out << ',' << format_value(v);
    out << '\n';
  }
}

AffinityMatrix read_matrix_csv(std::istream& in, std::string_view source) {
  AffinityMatrix m;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cells = split_csv_line(line);
    const std::string at = std::string(source) + ": line " + std::to_string(line_no);
    if (header) {
      m.labels.assign(cells.begin() + 1, cells.end());
      if (m.labels.empty()) throw DataError("matrix header without labels at " + at);
      header = false;
      continue;
    }
    if (cells.size() != m.labels.size() + 1) throw DataError("matrix row of wrong width at " + at);
    if (m.values.size() == m.labels.size()) throw DataError("more rows than columns at " + at);
    if (cells[0] != m.labels[m.values.size()]) {
      throw DataError("row label '" + cells[0] + "' does not match the header order at " + at);
    }
    std::vector<double> row;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      char* end = nullptr;
      const double v = std::strtod(cells[c].c_str(), &end);
      if (cells[c].empty() || end != cells[c].c_str() + cells[c].size()) {
        throw DataError("bad matrix entry '" + cells[c] + "' at " + at);
      }
      row.push_back(v);
    }
    m.values.push_back(std::move(row));
  }
  if (m.values.size() != m.labels.size()) {
    throw DataError(std::string(source) + ": matrix has " + std::to_string(m.values.size()) + " rows for " +
                    std::to_string(m.labels.size()) + " columns");
  }
  return m;
}

}  // namespace kwx
