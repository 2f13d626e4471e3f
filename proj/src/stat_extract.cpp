#include "kwx/stat_extract.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "kwx/candidates.hpp"
#include "kwx/levenshtein.hpp"
#include "kwx/utf8.hpp"

namespace kwx {
namespace {

struct TermStats {
  std::size_t tf = 0;
  std::size_t capitalized = 0;
  std::size_t acronym = 0;
  bool stopword = false;
  bool valid = false;
  std::vector<std::size_t> sentences;  // one entry per occurrence
  std::vector<std::string> left;       // left neighbours within the window
  std::vector<std::string> right;
  double score = 0.0;
};

bool is_acronym(const std::string& surface) {
  const std::u32string cps = utf8::decode(surface);
  if (cps.size() < 2) return false;
  bool any_letter = false;
  for (char32_t cp : cps) {
    if (utf8::is_letter(cp)) {
      any_letter = true;
      if (!utf8::is_upper(cp)) return false;
    }
  }
  return any_letter;
}

bool starts_upper(const std::string& surface) {
  const std::u32string cps = utf8::decode(surface);
  return !cps.empty() && utf8::is_upper(cps.front());
}

double median(std::vector<std::size_t> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return static_cast<double>(values[n / 2]);
  return 0.5 * static_cast<double>(values[n / 2 - 1] + values[n / 2]);
}

std::size_t count_of(const std::vector<std::string>& values, const std::string& needle) {
  return static_cast<std::size_t>(std::count(values.begin(), values.end(), needle));
}

}  // namespace

double yake_term_score(const TermFeatures& f) {
  const double denominator = f.casing + f.tf_norm / f.relatedness + f.dispersion / f.relatedness;
  return f.relatedness * f.position / denominator;
}

YakeResult yake_extract(const Document& doc, const Normalizer& normalizer, const YakeOptions& options) {
  YakeResult result;
  const std::vector<Token> tokens = normalizer.analyze(doc.text);
  if (tokens.empty()) return result;

  bool has_upper = false;
  for (const Token& tok : tokens) {
    if (tok.surface != tok.lower) {
      has_upper = true;
      break;
    }
  }
  result.casing_neutralized = !has_upper;

  std::unordered_map<std::string, TermStats> terms;
  std::vector<std::string> block;  // consecutive words since the last punctuation mark
  std::size_t block_sentence = 0;
  std::size_t prev_sentence = static_cast<std::size_t>(-1);
  for (const Token& tok : tokens) {
    if (tok.sent_idx != block_sentence) {
      block.clear();
      block_sentence = tok.sent_idx;
    }
    if (!tok.is_alphanumeric) {
      block.clear();
      continue;
    }
    const bool sentence_start = tok.sent_idx != prev_sentence;
    prev_sentence = tok.sent_idx;

    TermStats& term = terms[tok.norm];
    if (term.tf == 0) {
      term.stopword = tok.is_stopword;
      term.valid = !tok.is_stopword && tok.has_letter;
    }
    ++term.tf;
    term.sentences.push_back(tok.sent_idx);
    if (is_acronym(tok.surface)) {
      ++term.acronym;
    } else if (starts_upper(tok.surface) && !sentence_start) {
      ++term.capitalized;
    }
    const std::size_t from = block.size() > options.window ? block.size() - options.window : 0;
    for (std::size_t b = from; b < block.size(); ++b) {
      term.left.push_back(block[b]);
      terms[block[b]].right.push_back(tok.norm);
    }
    block.push_back(tok.norm);
  }

  const std::size_t n_sentences = tokens.back().sent_idx + 1;
  std::size_t max_tf = 0;
  double sum_tf = 0.0, sum_sq = 0.0;
  std::size_t n_valid = 0;
  for (const auto& [_, term] : terms) {
    max_tf = std::max(max_tf, term.tf);
    if (!term.valid) continue;
    ++n_valid;
    sum_tf += static_cast<double>(term.tf);
    sum_sq += static_cast<double>(term.tf) * static_cast<double>(term.tf);
  }
  const double mean_tf = n_valid ? sum_tf / static_cast<double>(n_valid) : 0.0;
  const double std_tf = n_valid ? std::sqrt(std::max(0.0, sum_sq / static_cast<double>(n_valid) - mean_tf * mean_tf)) : 0.0;
  const double tf_scale = mean_tf + std_tf > 0.0 ? mean_tf + std_tf : 1.0;

  for (auto& [_, term] : terms) {
    TermFeatures f;
    f.tf = term.tf;
    f.tf_norm = static_cast<double>(term.tf) / tf_scale;
    f.casing = has_upper ? static_cast<double>(std::max(term.capitalized, term.acronym)) /
                               (1.0 + std::log(static_cast<double>(term.tf)))
                         : 1.0;
    f.position = std::log(std::log(3.0 + median(term.sentences)));
    const auto distinct = [](std::vector<std::string> v) {
      std::sort(v.begin(), v.end());
      return static_cast<double>(std::unique(v.begin(), v.end()) - v.begin());
    };
    const double wl = term.left.empty() ? 0.0 : distinct(term.left) / static_cast<double>(term.left.size());
    const double wr = term.right.empty() ? 0.0 : distinct(term.right) / static_cast<double>(term.right.size());
    f.relatedness = 1.0 + (wl + wr) * static_cast<double>(term.tf) / static_cast<double>(max_tf);
    std::vector<std::size_t> sents = term.sentences;
    std::sort(sents.begin(), sents.end());
    const auto distinct_sents = std::unique(sents.begin(), sents.end()) - sents.begin();
    f.dispersion = static_cast<double>(distinct_sents) / static_cast<double>(n_sentences);
    term.score = yake_term_score(f);
  }

  std::vector<RankedPhrase> ranked;
  for (const Candidate& cand : generate_candidates(tokens, options.max_ngram, true)) {
    const std::size_t start = cand.first_pos();
    // Phrases repeating a term ("a a") add nothing over the term itself.
    bool repeated = false;
    for (std::size_t i = 0; i < cand.n && !repeated; ++i) {
      for (std::size_t j = i + 1; j < cand.n; ++j) {
        if (tokens[start + i].norm == tokens[start + j].norm) {
          repeated = true;
          break;
        }
      }
    }
    if (repeated) continue;

    double prod = 1.0, sum = 0.0;
    for (std::size_t i = 0; i < cand.n; ++i) {
      const Token& tok = tokens[start + i];
      const TermStats& term = terms.at(tok.norm);
      if (tok.is_stopword) {
        // Inner stopword: weigh by how strongly it binds its neighbours.
        const std::string& left = tokens[start + i - 1].norm;
        const std::string& right = tokens[start + i + 1].norm;
        const TermStats& left_term = terms.at(left);
        const TermStats& right_term = terms.at(right);
        const double p_left = static_cast<double>(count_of(left_term.right, tok.norm)) / static_cast<double>(left_term.tf);
        const double p_right = static_cast<double>(count_of(term.right, right)) / static_cast<double>(right_term.tf);
        const double prob = p_left * p_right;
        prod *= 1.0 + (1.0 - prob);
        sum -= 1.0 - prob;
      } else {
        prod *= term.score;
        sum += term.score;
      }
    }
    const double score = prod / (static_cast<double>(cand.tf()) * (1.0 + sum));
    ranked.push_back({cand.surface, cand.norm, score, start});
  }

  sort_ranked(ranked, ScoreOrder::lower_is_better);
  std::vector<std::string> kept_lower;
  for (RankedPhrase& item : ranked) {
    if (result.keywords.size() >= options.k) break;
    const std::string lower = utf8::to_lower(item.phrase);
    bool redundant = false;
    for (const std::string& prev : kept_lower) {
      if (levenshtein_similarity(lower, prev) >= options.dedup_similarity) {
        redundant = true;
        break;
      }
    }
    if (redundant) continue;
    kept_lower.push_back(lower);
    result.keywords.push_back({std::move(item.phrase), item.score, ScoreOrder::lower_is_better});
  }
  return result;
}

double kpminer_boost(std::size_t all_occurrences, std::size_t multiword_occurrences, double alpha, double sigma) {
  if (multiword_occurrences == 0) return sigma;
  const double boost = static_cast<double>(all_occurrences) / (static_cast<double>(multiword_occurrences) * alpha);
  return std::min(boost, sigma);
}

std::vector<ScoredKeyword> kpminer(const Document& doc, const Normalizer& normalizer, const KpMinerOptions& options) {
  const std::vector<Token> tokens = normalizer.analyze(doc.text);
  const std::vector<Candidate> candidates = chunk_candidates(tokens);

  std::size_t all_occurrences = 0, multiword_occurrences = 0;
  for (const Candidate& c : candidates) {
    all_occurrences += c.tf();
    if (c.n > 1) multiword_occurrences += c.tf();
  }
  const double boost = kpminer_boost(all_occurrences, multiword_occurrences, options.alpha, options.sigma);

  std::vector<RankedPhrase> ranked;
  for (const Candidate& c : candidates) {
    if (c.tf() < options.lasf || c.first_pos() >= options.cutoff) continue;
    double score = static_cast<double>(c.tf()) * boost;
    if (c.n > 1) {
      // Earlier compounds weigh more: factor in (1, 2].
      const double cutoff = static_cast<double>(std::max<std::size_t>(options.cutoff, 1));
      score *= 1.0 + (cutoff - static_cast<double>(c.first_pos())) / cutoff;
    }
    ranked.push_back({c.surface, c.norm, score, c.first_pos()});
  }
  return finalize_ranking(std::move(ranked), ScoreOrder::higher_is_better, options.k);
}

}  // namespace kwx
