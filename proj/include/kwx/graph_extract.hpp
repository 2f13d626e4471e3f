#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kwx/candidates.hpp"
#include "kwx/corpus.hpp"
#include "kwx/graph.hpp"
#include "kwx/normalize.hpp"
#include "kwx/ranking.hpp"

namespace kwx {

// ---------------------------------------------------------------- TextRank

struct TextRankOptions {
  std::size_t k = 10;
  std::size_t window = 2;     // tokens i and j are linked when 0 < j - i < window
  double keep_ratio = 0.33;   // share of top-ranked words kept as phrase seeds
  PageRankOptions pagerank;
};

// Number of words kept from `n_nodes` ranked words: ceil(keep_ratio * n_nodes).
std::size_t textrank_keep_count(std::size_t n_nodes, double keep_ratio);

std::vector<ScoredKeyword> textrank(const Document& doc, const Normalizer& normalizer,
                                    const TextRankOptions& options = {});

// ------------------------------------------------------- MultipartiteRank

struct MultipartiteOptions {
  std::size_t k = 10;
  double sim_threshold = 0.74;  // candidates join a topic at this stem-set similarity
  double alpha = 1.1;
  PageRankOptions pagerank;
};

struct TopicCluster {
  std::vector<std::size_t> members;  // candidate indices, ascending
  std::size_t representative = 0;    // earliest-occurring member
};

struct MultipartiteGraph {
  std::vector<Candidate> candidates;
  std::vector<std::size_t> topic_of;  // topic index per candidate
  std::vector<TopicCluster> topics;
  WordGraph graph{true};              // node i = candidate i
};

// Nouns, proper nouns and adjectives in Universal or Penn tag sets.
bool is_nominal_tag(std::string_view tag);

// Builds the topic-partitioned candidate graph, including the first-occurrence
// weight adjustment. `pos_tags`, when given, must align with the tokenizer
// output; candidates then are maximal runs of nominal tags. Otherwise they are
// stopword- and punctuation-delimited chunks.
MultipartiteGraph build_multipartite_graph(std::span<const Token> tokens, const MultipartiteOptions& options,
                                           const std::vector<std::string>* pos_tags = nullptr);

// Stem-set Jaccard similarity between two candidates' normalized tokens.
double stem_set_similarity(const Candidate& a, const Candidate& b);

std::vector<ScoredKeyword> multipartite_rank(const Document& doc, const Normalizer& normalizer,
                                             const MultipartiteOptions& options = {},
                                             const std::vector<std::string>* pos_tags = nullptr);

// ------------------------------------------------------------------- RaKUn

// Every reconstruction constant of the RaKUn extractor lives here.
struct RakunOptions {
  std::size_t k = 10;
  std::size_t distance_threshold = 2;      // max edit distance inside a meta-vertex
  std::size_t bigram_count_threshold = 2;  // min co-occurrences for a bigram keyword
  std::size_t merge_min_length = 5;        // shorter words never merge
  std::size_t top_nodes_factor = 2;        // bigrams are built from the top factor*k nodes
};

struct MetaVertex {
  std::string label;                // first-occurring member
  std::vector<std::string> members; // lowercased word types, first-occurrence order
};

// Groups word types greedily in first-occurrence order: a word joins the first
// meta-vertex all of whose members are within `distance_threshold` of it.
// Words shorter than `merge_min_length` stay alone.
std::vector<MetaVertex> merge_meta_vertices(const std::vector<std::string>& words, std::size_t distance_threshold,
                                            std::size_t merge_min_length);

std::vector<ScoredKeyword> rakun(const Document& doc, const Normalizer& normalizer,
                                 const RakunOptions& options = {});

}  // namespace kwx
