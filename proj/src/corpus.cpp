#include "kwx/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

#include "kwx/error.hpp"
#include "kwx/normalize.hpp"

namespace kwx {
namespace {

using nlohmann::json;

std::string at_line(std::string_view source, std::size_t line_no) {
  return std::string(source) + ": line " + std::to_string(line_no);
}

const json& require(const json& obj, const char* field, std::size_t line_no) {
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw DataError("missing field '" + std::string(field) + "' at line " + std::to_string(line_no));
  }
  return *it;
}

std::string require_string(const json& obj, const char* field, std::size_t line_no) {
  const json& value = require(obj, field, line_no);
  if (!value.is_string()) {
    throw DataError("field '" + std::string(field) + "' must be a string at line " + std::to_string(line_no));
  }
  return value.get<std::string>();
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::valid: return "valid";
    case Split::test: return "test";
  }
  return "test";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "valid" || name == "validation" || name == "dev") return Split::valid;
  if (name == "test") return Split::test;
  throw UsageError("unknown split '" + std::string(name) + "'");
}

std::vector<Document> parse_jsonl(std::istream& in, std::string_view lang, Split split, std::string_view source) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError("malformed JSON at " + at_line(source, line_no) + ": " + e.what());
    }
    if (!obj.is_object()) throw DataError("expected a JSON object at " + at_line(source, line_no));

    Document doc;
    doc.id = require_string(obj, "id", line_no);
    if (doc.id.empty()) throw DataError("empty id at line " + std::to_string(line_no));
    std::string text = require_string(obj, "text", line_no);
    const json& keywords = require(obj, "keywords", line_no);
    if (!keywords.is_array()) {
      throw DataError("field 'keywords' must be an array at line " + std::to_string(line_no));
    }
    for (const json& kw : keywords) {
      if (!kw.is_string()) {
        throw DataError("field 'keywords' must hold strings at line " + std::to_string(line_no));
      }
      doc.keywords.push_back(kw.get<std::string>());
    }
    if (auto title = obj.find("title"); title != obj.end() && title->is_string() &&
                                        !title->get_ref<const std::string&>().empty()) {
      text = title->get<std::string>() + "\n" + text;
    }
    doc.text = std::move(text);
    doc.lang = std::string(lang);
    doc.split = split;
    if (!seen.insert(doc.id).second) {
      throw DataError("duplicate id '" + doc.id + "' at line " + std::to_string(line_no));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_jsonl(const std::filesystem::path& path, std::string_view lang, Split split) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file '" + path.string() + "'");
  try {
    return parse_jsonl(in, lang, split, path.string());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_jsonl(std::ostream& out, const std::vector<Document>& docs) {
  for (const Document& doc : docs) {
    nlohmann::ordered_json obj;
    obj["id"] = doc.id;
    obj["text"] = doc.text;
    obj["keywords"] = doc.keywords;
    out << obj.dump() << '\n';
  }
}

std::optional<CorpusFileName> parse_corpus_file_name(const std::filesystem::path& path) {
  const std::string name = path.filename().string();
  constexpr std::string_view kExt = ".jsonl";
  if (name.size() <= kExt.size() || name.compare(name.size() - kExt.size(), kExt.size(), kExt) != 0) {
    return std::nullopt;
  }
  const std::string stem = name.substr(0, name.size() - kExt.size());
  const auto dot = stem.rfind('.');
  if (dot == std::string::npos || dot == 0) return std::nullopt;
  try {
    return CorpusFileName{stem.substr(0, dot), parse_split(stem.substr(dot + 1))};
  } catch (const UsageError&) {
    return std::nullopt;
  }
}

std::string corpus_file_name(std::string_view lang, Split split) {
  return std::string(lang) + "." + std::string(to_string(split)) + ".jsonl";
}

CorpusStats compute_stats(const std::vector<Document>& docs, const Normalizer& normalizer) {
  if (docs.empty()) throw DataError("cannot compute statistics of an empty document list");
  CorpusStats stats;
  stats.size = docs.size();
  for (const Document& doc : docs) {
    stats.n_keywords += doc.keywords.size();
    if (doc.keywords.empty()) continue;
    const std::vector<std::string> text_norms = normalizer.phrase_norms(doc.text);
    for (const std::string& kw : doc.keywords) {
      if (contains_sequence(text_norms, normalizer.phrase_norms(kw))) ++stats.n_present;
    }
  }
  stats.kw_per_doc = static_cast<double>(stats.n_keywords) / static_cast<double>(stats.size);
  stats.kw_present =
      stats.n_keywords == 0 ? 0.0 : static_cast<double>(stats.n_present) / static_cast<double>(stats.n_keywords);
  return stats;
}

}  // namespace kwx
