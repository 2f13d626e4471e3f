#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kwx/stopwords.hpp"

namespace kwx {

struct Token {
  std::string surface;    // as written in the text
  std::string lower;      // lowercased surface
  std::string norm;       // lowercased stem/lemma (punctuation: the symbol itself)
  std::size_t sent_idx = 0;
  std::size_t tok_idx = 0;
  bool is_stopword = false;
  bool is_alphanumeric = false;  // contains at least one letter or digit
  bool has_letter = false;       // false for numbers and punctuation
};

// Splits text into word and punctuation tokens with sentence indices.
//
// Words are maximal runs of letters and digits; an apostrophe or hyphen
// joining two word characters stays inside the word, as does '.' or ','
// between two digits. Every other non-space character becomes its own
// punctuation token. Sentences end at '.', '!', '?', U+2026 and newlines,
// except that a period directly following a one-letter word ("e.g.") does
// not end a sentence. `norm` is set to the lowercased surface.
std::vector<Token> tokenize(std::string_view text);

/// Surface -> lemma lookup table loaded from `surface<TAB>lemma` lines.
class LemmaTable {
 public:
  LemmaTable() = default;
  static LemmaTable load_tsv(const std::filesystem::path& path);

  // Keys are lowercased on insert; the first entry for a key wins.
  void add(std::string_view surface, std::string_view lemma);
  const std::string* find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::string> entries_;
};

// Exact, case-insensitive lookup; a miss returns the word unchanged.
std::string lemmatize(std::string_view word, const LemmaTable& table);

enum class NormMode { porter_stem, latvian_stem, lemma_table, identity };

std::string_view to_string(NormMode mode);
NormMode parse_norm_mode(std::string_view name);

/// Language-specific token normalization shared by candidate generation and
/// evaluation matching. Immutable after construction.
class Normalizer {
 public:
  Normalizer(std::string lang, NormMode mode, StopwordSet stopwords,
             std::optional<LemmaTable> lemmas = std::nullopt);

  // Default configuration for a language: Porter for English, the Latvian
  // stemmer for Latvian, a lemma table for other languages when
  // `lemmas.<lang>.tsv` exists in `resource_dir`, identity otherwise.
  // `stopwords.<lang>.txt` in `resource_dir` overrides the bundled list.
  static Normalizer for_language(std::string_view lang,
                                 const std::filesystem::path& resource_dir = {});

  static Normalizer identity(StopwordSet stopwords = {});

  const std::string& lang() const { return lang_; }
  NormMode mode() const { return mode_; }
  const StopwordSet& stopwords() const { return stopwords_; }

  bool is_stopword(std::string_view lowered) const;

  // Lowercases and reduces a single word. Stemming and lemmatization are
  // iterated to a fixed point, so normalize_word is idempotent.
  std::string normalize_word(std::string_view word) const;

  // Tokenizes `text` and fills norm/is_stopword for every token.
  std::vector<Token> analyze(std::string_view text) const;

  // Normalized token sequence of a phrase (punctuation tokens included).
  std::vector<std::string> phrase_norms(std::string_view phrase) const;
  // Space-joined phrase_norms.
  std::string normalize_phrase(std::string_view phrase) const;

 private:
  std::string reduce_once(const std::string& lowered) const;

  std::string lang_;
  NormMode mode_;
  StopwordSet stopwords_;
  std::optional<LemmaTable> lemmas_;
};

// True iff `needle` occurs as a contiguous subsequence of `haystack`.
bool contains_sequence(const std::vector<std::string>& haystack,
                       const std::vector<std::string>& needle);

}  // namespace kwx
