#pragma once

#include <span>
#include <string>
#include <vector>

#include "kwx/normalize.hpp"

namespace kwx {

struct Occurrence {
  std::size_t sent_idx = 0;
  std::size_t tok_idx = 0;  // position of the first token
};

struct Candidate {
  std::string surface;  // first occurrence, original case, tokens joined by ' '
  std::string norm;     // normalized tokens joined by ' '
  std::size_t n = 0;    // length in tokens
  std::vector<Occurrence> occurrences;

  std::size_t tf() const { return occurrences.size(); }
  std::size_t first_pos() const { return occurrences.front().tok_idx; }
};

// A token may appear inside a candidate: it is a word containing a letter.
bool is_candidate_token(const Token& tok);

// Sliding-window n-grams (1..max_n) inside sentence boundaries. Windows with
// punctuation or number tokens are rejected, as are windows starting or ending
// with a stopword; inner stopwords are allowed only if `allow_inner_stopword`.
// Candidates sharing a norm are merged; output is in first-occurrence order
// (start position, then length). Throws UsageError if max_n is outside 1..3.
std::vector<Candidate> generate_candidates(std::span<const Token> tokens, int max_n,
                                           bool allow_inner_stopword);

// Maximal runs of consecutive eligible tokens within one sentence, merged by
// norm. When `eligible` is empty, eligible means a non-stopword candidate token.
std::vector<Candidate> chunk_candidates(std::span<const Token> tokens,
                                        const std::vector<bool>& eligible = {});

}  // namespace kwx
