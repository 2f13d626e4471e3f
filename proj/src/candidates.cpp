#include "kwx/candidates.hpp"

#include <unordered_map>

#include "kwx/error.hpp"

namespace kwx {
namespace {

class CandidateSet {
 public:
  void add(std::span<const Token> tokens, std::size_t start, std::size_t n) {
    std::string norm;
    for (std::size_t k = 0; k < n; ++k) {
      if (k) norm.push_back(' ');
      norm += tokens[start + k].norm;
    }
    auto [it, inserted] = index_.try_emplace(norm, items_.size());
    if (inserted) {
      Candidate c;
      for (std::size_t k = 0; k < n; ++k) {
        if (k) c.surface.push_back(' ');
        c.surface += tokens[start + k].surface;
      }
      c.norm = std::move(norm);
      c.n = n;
      items_.push_back(std::move(c));
    }
    items_[it->second].occurrences.push_back({tokens[start].sent_idx, tokens[start].tok_idx});
  }

  std::vector<Candidate> take() { return std::move(items_); }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Candidate> items_;
};

}  // namespace

bool is_candidate_token(const Token& tok) { return tok.is_alphanumeric && tok.has_letter; }

std::vector<Candidate> generate_candidates(std::span<const Token> tokens, int max_n, bool allow_inner_stopword) {
  if (max_n < 1 || max_n > 3) {
    throw UsageError("n-gram size must be within 1..3, got " + std::to_string(max_n));
  }
  CandidateSet set;
  const std::size_t n_tokens = tokens.size();
  for (std::size_t start = 0; start < n_tokens; ++start) {
    for (std::size_t n = 1; n <= static_cast<std::size_t>(max_n) && start + n <= n_tokens; ++n) {
      const std::size_t last = start + n - 1;
      const Token& tail = tokens[last];
      if (!is_candidate_token(tail) || tail.sent_idx != tokens[start].sent_idx) break;
      bool ok = !tokens[start].is_stopword && !tail.is_stopword && is_candidate_token(tokens[start]);
      for (std::size_t k = start + 1; ok && k < last; ++k) {
        if (tokens[k].is_stopword && !allow_inner_stopword) ok = false;
      }
      if (ok) set.add(tokens, start, n);
    }
  }
  return set.take();
}

std::vector<Candidate> chunk_candidates(std::span<const Token> tokens, const std::vector<bool>& eligible) {
  auto ok = [&](std::size_t i) {
    if (!eligible.empty()) return static_cast<bool>(eligible[i]);
    return is_candidate_token(tokens[i]) && !tokens[i].is_stopword;
  };
  CandidateSet set;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!ok(i)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size() && ok(j) && tokens[j].sent_idx == tokens[i].sent_idx) ++j;
    set.add(tokens, i, j - i);
    i = j;
  }
  return set.take();
}

}  // namespace kwx
