#include "kwx/normalize.hpp"

#include <fstream>

#include "kwx/error.hpp"
#include "kwx/latvian.hpp"
#include "kwx/log.hpp"
#include "kwx/porter.hpp"
#include "kwx/utf8.hpp"

namespace kwx {
namespace {

constexpr int kMaxReductionRounds = 16;

bool is_joiner(char32_t cp) { return cp == U'\'' || cp == U'-' || cp == 0x2019; }

bool is_sentence_end(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  const std::u32string cps = utf8::decode(text);
  const std::size_t n = cps.size();
  std::vector<Token> tokens;

  std::size_t sent = 0;
  bool boundary_pending = false;
  auto emit = [&](std::u32string_view piece) {
    if (boundary_pending && !tokens.empty()) ++sent;
    boundary_pending = false;
    Token tok;
    tok.surface = utf8::encode(piece);
    tok.lower = utf8::encode(utf8::to_lower(piece));
    tok.norm = tok.lower;
    tok.sent_idx = sent;
    tok.tok_idx = tokens.size();
    for (char32_t cp : piece) {
      if (utf8::is_letter(cp)) tok.has_letter = true;
      if (utf8::is_word_char(cp)) tok.is_alphanumeric = true;
    }
    tokens.push_back(std::move(tok));
  };

  std::size_t i = 0;
  while (i < n) {
    char32_t cp = cps[i];
    if (utf8::is_space(cp)) {
      if (cp == U'\n' || cp == 0x2028 || cp == 0x2029) boundary_pending = true;
      ++i;
      continue;
    }
    if (utf8::is_word_char(cp)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (utf8::is_word_char(cps[j])) {
          ++j;
          continue;
        }
        if (j + 1 < n && utf8::is_word_char(cps[j + 1])) {
          if (is_joiner(cps[j])) {
            j += 2;
            continue;
          }
          if ((cps[j] == U'.' || cps[j] == U',') && utf8::is_digit(cps[j - 1]) && utf8::is_digit(cps[j + 1])) {
            j += 2;
            continue;
          }
        }
        break;
      }
      emit(std::u32string_view(cps).substr(i, j - i));
      i = j;
      continue;
    }
    emit(std::u32string_view(cps).substr(i, 1));
    if (is_sentence_end(cp)) {
      // "e.g.": a period glued to a one-letter word is an abbreviation mark.
      bool abbreviation = false;
      if (cp == U'.' && tokens.size() >= 2 && i > 0 && utf8::is_letter(cps[i - 1])) {
        const Token& prev = tokens[tokens.size() - 2];
        abbreviation = utf8::length(prev.surface) == 1;
      }
      if (!abbreviation) boundary_pending = true;
    }
    ++i;
  }
  return tokens;
}

LemmaTable LemmaTable::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lemma table '" + path.string() + "'");
  LemmaTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw DataError("lemma table '" + path.string() + "': expected surface<TAB>lemma at line " +
                      std::to_string(line_no));
    }
    table.add(std::string_view(line).substr(0, tab), std::string_view(line).substr(tab + 1));
  }
  return table;
}

void LemmaTable::add(std::string_view surface, std::string_view lemma) {
  entries_.try_emplace(utf8::to_lower(surface), std::string(lemma));
}

const std::string* LemmaTable::find(std::string_view word) const {
  auto it = entries_.find(utf8::to_lower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string lemmatize(std::string_view word, const LemmaTable& table) {
  const std::string* lemma = table.find(word);
  return lemma ? *lemma : std::string(word);
}

std::string_view to_string(NormMode mode) {
  switch (mode) {
    case NormMode::porter_stem: return "porter";
    case NormMode::latvian_stem: return "latvian";
    case NormMode::lemma_table: return "lemma";
    case NormMode::identity: return "identity";
  }
  return "identity";
}

NormMode parse_norm_mode(std::string_view name) {
  if (name == "porter" || name == "porter_stem") return NormMode::porter_stem;
  if (name == "latvian" || name == "latvian_stem") return NormMode::latvian_stem;
  if (name == "lemma" || name == "lemma_table") return NormMode::lemma_table;
  if (name == "identity") return NormMode::identity;
  throw UsageError("unknown normalizer mode '" + std::string(name) + "'");
}

Normalizer::Normalizer(std::string lang, NormMode mode, StopwordSet stopwords,
                       std::optional<LemmaTable> lemmas)
    : lang_(std::move(lang)), mode_(mode), stopwords_(std::move(stopwords)), lemmas_(std::move(lemmas)) {
  if (mode_ == NormMode::lemma_table && !lemmas_) {
    throw UsageError("normalizer mode 'lemma' requires a lemma table");
  }
}

Normalizer Normalizer::for_language(std::string_view lang, const std::filesystem::path& resource_dir) {
  namespace fs = std::filesystem;
  const std::string code(lang);

  StopwordSet stopwords;
  const fs::path stop_file = resource_dir.empty() ? fs::path() : resource_dir / ("stopwords." + code + ".txt");
  if (!stop_file.empty() && fs::exists(stop_file)) {
    stopwords = load_stopwords(stop_file);
  } else {
    stopwords = builtin_stopwords(code);
  }

  if (code == "en") return Normalizer(code, NormMode::porter_stem, std::move(stopwords));
  if (code == "lv") return Normalizer(code, NormMode::latvian_stem, std::move(stopwords));

  const fs::path lemma_file = resource_dir.empty() ? fs::path() : resource_dir / ("lemmas." + code + ".tsv");
  if (!lemma_file.empty() && fs::exists(lemma_file)) {
    return Normalizer(code, NormMode::lemma_table, std::move(stopwords), LemmaTable::load_tsv(lemma_file));
  }
  if (stopwords.empty()) {
    log::warn("no stopword list or lemma table for language '" + code + "'; using identity normalization");
  } else if (code == "sl" || code == "hr" || code == "et" || code == "ru") {
    log::warn("no lemma table for language '" + code + "'; using identity normalization");
  }
  return Normalizer(code, NormMode::identity, std::move(stopwords));
}

Normalizer Normalizer::identity(StopwordSet stopwords) {
  return Normalizer("", NormMode::identity, std::move(stopwords));
}

bool Normalizer::is_stopword(std::string_view lowered) const {
  return stopwords_.find(std::string(lowered)) != stopwords_.end();
}

std::string Normalizer::reduce_once(const std::string& lowered) const {
  switch (mode_) {
    case NormMode::porter_stem: return porter_stem(lowered);
    case NormMode::latvian_stem: return latvian_stem(lowered);
    case NormMode::lemma_table: return utf8::to_lower(lemmatize(lowered, *lemmas_));
    case NormMode::identity: return lowered;
  }
  return lowered;
}

std::string Normalizer::normalize_word(std::string_view word) const {
  std::string current = utf8::to_lower(word);
  if (mode_ == NormMode::identity) return current;
  for (int round = 0; round < kMaxReductionRounds; ++round) {
    std::string next = reduce_once(current);
    if (next.empty() || next == current) break;
    current = std::move(next);
  }
  return current;
}

std::vector<Token> Normalizer::analyze(std::string_view text) const {
  std::vector<Token> tokens = tokenize(text);
  for (Token& tok : tokens) {
    if (tok.is_alphanumeric) {
      tok.norm = normalize_word(tok.lower);
      tok.is_stopword = is_stopword(tok.lower);
    }
  }
  return tokens;
}

std::vector<std::string> Normalizer::phrase_norms(std::string_view phrase) const {
  std::vector<std::string> norms;
  for (Token& tok : analyze(phrase)) norms.push_back(std::move(tok.norm));
  return norms;
}

std::string Normalizer::normalize_phrase(std::string_view phrase) const {
  std::string joined;
  for (const std::string& norm : phrase_norms(phrase)) {
    if (!joined.empty()) joined.push_back(' ');
    joined += norm;
  }
  return joined;
}

bool contains_sequence(const std::vector<std::string>& haystack, const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t start = 0; start + needle.size() <= haystack.size(); ++start) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (haystack[start + k] != needle[k]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

}  // namespace kwx
