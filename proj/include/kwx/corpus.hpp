#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kwx {

class Normalizer;

enum class Split { train, valid, test };

std::string_view to_string(Split split);
Split parse_split(std::string_view name);

struct Document {
  std::string id;
  std::string lang;
  std::string text;  // title + '\n' + body when a title was supplied
  std::vector<std::string> keywords;
  Split split = Split::test;

  bool operator==(const Document&) const = default;
};

// Reads `{"id", "title"?, "text", "keywords"}` lines. Blank lines are skipped.
// Throws DataError for malformed lines, missing fields and duplicate ids.
std::vector<Document> load_jsonl(const std::filesystem::path& path, std::string_view lang,
                                 Split split);
std::vector<Document> parse_jsonl(std::istream& in, std::string_view lang, Split split,
                                  std::string_view source = "<stream>");

void write_jsonl(std::ostream& out, const std::vector<Document>& docs);

// "<lang>.<split>.jsonl" -> (lang, split); nullopt if the name does not follow
// the convention.
struct CorpusFileName {
  std::string lang;
  Split split;
};
std::optional<CorpusFileName> parse_corpus_file_name(const std::filesystem::path& path);
std::string corpus_file_name(std::string_view lang, Split split);

struct CorpusStats {
  std::size_t size = 0;
  double kw_per_doc = 0.0;
  // Present gold keyword instances over all gold keyword instances.
  double kw_present = 0.0;
  std::size_t n_keywords = 0;
  std::size_t n_present = 0;
};

CorpusStats compute_stats(const std::vector<Document>& docs, const Normalizer& normalizer);

}  // namespace kwx
