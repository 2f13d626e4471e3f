#include "kwx/eval.hpp"

#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "kwx/error.hpp"

namespace kwx {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string where(std::string_view source, std::size_t line_no) {
  return std::string(source) + ": line " + std::to_string(line_no);
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::set<std::string> present_gold(const Document& doc, const Normalizer& normalizer) {
  std::set<std::string> present;
  if (doc.keywords.empty()) return present;
  const std::vector<std::string> text_norms = normalizer.phrase_norms(doc.text);
  for (const std::string& kw : doc.keywords) {
    const std::vector<std::string> kw_norms = normalizer.phrase_norms(kw);
    if (kw_norms.empty()) continue;
    if (contains_sequence(text_norms, kw_norms)) present.insert(normalizer.normalize_phrase(kw));
  }
  return present;
}

double f1_score(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

ScoreAtK score_at_k(const std::vector<std::string>& predicted, const std::set<std::string>& gold_present,
                    const Normalizer& normalizer, std::size_t k) {
  ScoreAtK s;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < predicted.size() && i < k; ++i) {
    std::string norm = normalizer.normalize_phrase(predicted[i]);
    if (norm.empty() || !seen.insert(norm).second) continue;
    ++s.considered;
    if (gold_present.count(norm)) ++s.matches;
  }
  s.precision = ratio(s.matches, s.considered);
  s.recall = ratio(s.matches, gold_present.size());
  s.f1 = f1_score(s.precision, s.recall);
  s.precision_fixed_k = ratio(s.matches, k);
  s.f1_fixed_k = f1_score(s.precision_fixed_k, s.recall);
  return s;
}

// ------------------------------------------------------------ predictions

std::vector<Prediction> parse_predictions(std::istream& in, std::string_view source) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError("malformed JSON at " + where(source, line_no) + ": " + e.what());
    }
    const auto id = obj.find("id");
    if (!obj.is_object() || id == obj.end() || !id->is_string()) {
      throw DataError("prediction without a string 'id' at " + where(source, line_no));
    }
    const auto keywords = obj.find("keywords");
    if (keywords == obj.end() || !keywords->is_array()) {
      throw DataError("prediction without a 'keywords' array at " + where(source, line_no));
    }
    Prediction p;
    p.id = id->get<std::string>();
    for (const json& kw : *keywords) {
      ScoredKeyword sk;
      if (kw.is_string()) {
        sk.phrase = kw.get<std::string>();
      } else if (kw.is_object() && kw.contains("phrase") && kw["phrase"].is_string()) {
        sk.phrase = kw["phrase"].get<std::string>();
        if (kw.contains("score") && kw["score"].is_number()) sk.score = kw["score"].get<double>();
      } else {
        throw DataError("keyword entry without a 'phrase' at " + where(source, line_no));
      }
      p.keywords.push_back(std::move(sk));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open predictions file '" + path.string() + "'");
  return parse_predictions(in, path.string());
}

void write_prediction(std::ostream& out, const Prediction& prediction) {
  ordered_json obj;
  obj["id"] = prediction.id;
  obj["keywords"] = ordered_json::array();
  for (const ScoredKeyword& kw : prediction.keywords) {
    obj["keywords"].push_back({{"phrase", kw.phrase}, {"score", kw.score}});
  }
  out << obj.dump() << '\n';
}

// ------------------------------------------------------------- evaluation

MetricsReport evaluate_run(const std::vector<Prediction>& predictions, const std::vector<Document>& corpus,
                           const Normalizer& normalizer, std::size_t k) {
  std::unordered_map<std::string, const Document*> docs;
  for (const Document& doc : corpus) docs.emplace(doc.id, &doc);
  std::unordered_map<std::string, const Prediction*> by_id;
  for (const Prediction& p : predictions) {
    if (!docs.count(p.id)) throw DataError("prediction for unknown document id '" + p.id + "'");
    if (!by_id.emplace(p.id, &p).second) throw DataError("duplicate prediction for document id '" + p.id + "'");
  }

  MetricsReport report;
  report.k = k;
  for (const Document& doc : corpus) {
    const std::set<std::string> gold = present_gold(doc, normalizer);
    if (gold.empty()) {
      ++report.omitted;
      continue;
    }
    std::vector<std::string> phrases;
    if (auto it = by_id.find(doc.id); it != by_id.end()) {
      for (const ScoredKeyword& kw : it->second->keywords) phrases.push_back(kw.phrase);
    }
    const ScoreAtK s = score_at_k(phrases, gold, normalizer, k);
    report.per_doc.push_back(
        {doc.id, s.precision, s.recall, s.f1, s.precision_fixed_k, s.f1_fixed_k, gold.size(), s.considered});
  }

  AggregateMetrics& agg = report.aggregate;
  for (const DocMetrics& d : report.per_doc) {
    agg.precision += d.precision;
    agg.recall += d.recall;
    agg.f1 += d.f1;
    agg.precision_fixed_k += d.precision_fixed_k;
    agg.f1_fixed_k += d.f1_fixed_k;
  }
  if (!report.per_doc.empty()) {
    const double n = static_cast<double>(report.per_doc.size());
    agg.precision /= n;
    agg.recall /= n;
    agg.f1 /= n;
    agg.precision_fixed_k /= n;
    agg.f1_fixed_k /= n;
  }
  return report;
}

MetricsReport evaluate_run(const std::filesystem::path& predictions_file, const std::vector<Document>& corpus,
                           const Normalizer& normalizer, std::size_t k) {
  return evaluate_run(load_predictions(predictions_file), corpus, normalizer, k);
}

// ------------------------------------------------------------------ JSON

std::string report_to_json(const MetricsReport& report) {
  ordered_json obj;
  obj["k"] = report.k;
  obj["averaging"] = "macro";
  obj["precision_denominator"] = "considered";
  obj["scored"] = report.per_doc.size();
  obj["omitted"] = report.omitted;
  const AggregateMetrics& a = report.aggregate;
  obj["aggregate"] = {{"precision", a.precision},
                      {"recall", a.recall},
                      {"f1", a.f1},
                      {"precision_fixed_k", a.precision_fixed_k},
                      {"f1_fixed_k", a.f1_fixed_k}};
  obj["per_doc"] = ordered_json::array();
  for (const DocMetrics& d : report.per_doc) {
    obj["per_doc"].push_back({{"id", d.id},
                              {"precision", d.precision},
                              {"recall", d.recall},
                              {"f1", d.f1},
                              {"precision_fixed_k", d.precision_fixed_k},
                              {"f1_fixed_k", d.f1_fixed_k},
                              {"n_gold_present", d.n_gold_present},
                              {"n_predicted", d.n_predicted}});
  }
  return obj.dump(2) + "\n";
}

MetricsReport report_from_json(std::string_view text, std::string_view source) {
  MetricsReport report;
  try {
    const json obj = json::parse(text);
    report.k = obj.at("k").get<std::size_t>();
    report.omitted = obj.at("omitted").get<std::size_t>();
    const json& a = obj.at("aggregate");
    report.aggregate.precision = a.at("precision").get<double>();
    report.aggregate.recall = a.at("recall").get<double>();
    report.aggregate.f1 = a.at("f1").get<double>();
    report.aggregate.precision_fixed_k = a.value("precision_fixed_k", 0.0);
    report.aggregate.f1_fixed_k = a.value("f1_fixed_k", 0.0);
    for (const json& d : obj.value("per_doc", json::array())) {
      report.per_doc.push_back({d.at("id").get<std::string>(), d.at("precision").get<double>(),
                                d.at("recall").get<double>(), d.at("f1").get<double>(),
                                d.value("precision_fixed_k", 0.0), d.value("f1_fixed_k", 0.0),
                                d.value("n_gold_present", std::size_t{0}), d.value("n_predicted", std::size_t{0})});
    }
  } catch (const json::exception& e) {
    throw DataError("bad metrics report " + std::string(source) + ": " + e.what());
  }
  return report;
}

}  // namespace kwx
