#include "kwx/graph_extract.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "kwx/error.hpp"
#include "kwx/hclust.hpp"
#include "kwx/levenshtein.hpp"
#include "kwx/utf8.hpp"

namespace kwx {
namespace {

bool is_graph_word(const Token& tok) { return is_candidate_token(tok) && !tok.is_stopword; }

std::vector<std::string> split_norm(const std::string& norm) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= norm.size()) {
    const auto space = norm.find(' ', start);
    const auto end = space == std::string::npos ? norm.size() : space;
    if (end > start) parts.push_back(norm.substr(start, end - start));
    if (space == std::string::npos) break;
    start = space + 1;
  }
  return parts;
}

}  // namespace

// ---------------------------------------------------------------- TextRank

std::size_t textrank_keep_count(std::size_t n_nodes, double keep_ratio) {
  // The epsilon keeps 0.33 * 100 from rounding up to 34.
  const double raw = keep_ratio * static_cast<double>(n_nodes);
  const auto kept = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::min(kept, n_nodes);
}

std::vector<ScoredKeyword> textrank(const Document& doc, const Normalizer& normalizer, const TextRankOptions& options) {
  const std::vector<Token> tokens = normalizer.analyze(doc.text);

  WordGraph graph(false);
  std::unordered_map<std::string, std::size_t> node_of;
  std::vector<std::size_t> node_first_pos;
  std::vector<std::size_t> token_node(tokens.size(), static_cast<std::size_t>(-1));
  for (const Token& tok : tokens) {
    if (!is_graph_word(tok)) continue;
    auto [it, inserted] = node_of.try_emplace(tok.norm, graph.size());
    if (inserted) {
      graph.add_node(tok.norm);
      node_first_pos.push_back(tok.tok_idx);
    }
    token_node[tok.tok_idx] = it->second;
  }
  if (graph.empty()) return {};

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (token_node[i] == static_cast<std::size_t>(-1)) continue;
    for (std::size_t j = i + 1; j < std::min(i + options.window, tokens.size()); ++j) {
      if (token_node[j] == static_cast<std::size_t>(-1)) continue;
      graph.set_edge(token_node[i], token_node[j], 1.0);
    }
  }
  const std::vector<double> scores = pagerank(graph, options.pagerank);

  std::vector<RankedPhrase> words;
  for (std::size_t v = 0; v < graph.size(); ++v) words.push_back({graph.label(v), graph.label(v), scores[v], node_first_pos[v]});
  sort_ranked(words, ScoreOrder::higher_is_better);
  std::vector<bool> kept(graph.size(), false);
  const std::size_t keep = textrank_keep_count(graph.size(), options.keep_ratio);
  for (std::size_t r = 0; r < keep; ++r) kept[node_of.at(words[r].norm)] = true;

  auto is_kept = [&](std::size_t i) {
    return token_node[i] != static_cast<std::size_t>(-1) && kept[token_node[i]];
  };
  std::vector<RankedPhrase> phrases;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!is_kept(i)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size() && is_kept(j) && tokens[j].sent_idx == tokens[i].sent_idx) ++j;
    RankedPhrase phrase;
    phrase.first_pos = i;
    for (std::size_t t = i; t < j; ++t) {
      if (t > i) {
        phrase.phrase.push_back(' ');
        phrase.norm.push_back(' ');
      }
      phrase.phrase += tokens[t].surface;
      phrase.norm += tokens[t].norm;
      phrase.score += scores[token_node[t]];
    }
    if (seen.emplace(phrase.norm, phrases.size()).second) phrases.push_back(std::move(phrase));
    i = j;
  }
  return finalize_ranking(std::move(phrases), ScoreOrder::higher_is_better, options.k);
}

// ------------------------------------------------------- MultipartiteRank

bool is_nominal_tag(std::string_view tag) {
  return tag == "NOUN" || tag == "PROPN" || tag == "ADJ" || tag.starts_with("NN") || tag.starts_with("JJ");
}

double stem_set_similarity(const Candidate& a, const Candidate& b) {
  std::vector<std::string> sa = split_norm(a.norm), sb = split_norm(b.norm);
  std::sort(sa.begin(), sa.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  std::sort(sb.begin(), sb.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  std::vector<std::string> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  const std::size_t uni = sa.size() + sb.size() - common.size();
  return uni == 0 ? 0.0 : static_cast<double>(common.size()) / static_cast<double>(uni);
}

MultipartiteGraph build_multipartite_graph(std::span<const Token> tokens, const MultipartiteOptions& options,
                                           const std::vector<std::string>* pos_tags) {
  MultipartiteGraph mg;
  if (pos_tags) {
    if (pos_tags->size() != tokens.size()) {
      throw DataError("POS tags do not align with tokens: " + std::to_string(pos_tags->size()) + " tags for " +
                      std::to_string(tokens.size()) + " tokens");
    }
    std::vector<bool> eligible(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      eligible[i] = is_graph_word(tokens[i]) && is_nominal_tag((*pos_tags)[i]);
    }
    mg.candidates = chunk_candidates(tokens, eligible);
  } else {
    mg.candidates = chunk_candidates(tokens);
  }
  const std::size_t n = mg.candidates.size();
  for (const Candidate& c : mg.candidates) mg.graph.add_node(c.norm);
  if (n == 0) return mg;

  DistanceMatrix distances(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      distances[i][j] = distances[j][i] = 1.0 - stem_set_similarity(mg.candidates[i], mg.candidates[j]);
    }
  }
  const auto merges = agglomerate(distances, Linkage::average);
  mg.topic_of = cut_tree(n, merges, 1.0 - options.sim_threshold + 1e-12);

  const std::size_t n_topics = *std::max_element(mg.topic_of.begin(), mg.topic_of.end()) + 1;
  mg.topics.resize(n_topics);
  for (std::size_t c = 0; c < n; ++c) {
    TopicCluster& topic = mg.topics[mg.topic_of[c]];
    if (topic.members.empty() || mg.candidates[c].first_pos() < mg.candidates[topic.representative].first_pos()) {
      topic.representative = c;
    }
    topic.members.push_back(c);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (mg.topic_of[i] == mg.topic_of[j]) continue;
      double weight = 0.0;
      for (const Occurrence& oi : mg.candidates[i].occurrences) {
        for (const Occurrence& oj : mg.candidates[j].occurrences) {
          const auto gap = oi.tok_idx > oj.tok_idx ? oi.tok_idx - oj.tok_idx : oj.tok_idx - oi.tok_idx;
          weight += 1.0 / static_cast<double>(std::max<std::size_t>(gap, 1));
        }
      }
      mg.graph.set_edge(i, j, weight);
      mg.graph.set_edge(j, i, weight);
    }
  }

  // Edges into the first candidate of a topic gain the weight that links the
  // topic's other members to the same neighbour, scaled by alpha * e^(1/p)
  // with p the 1-based position of that first occurrence.
  std::map<std::pair<std::size_t, std::size_t>, double> boosts;
  for (const TopicCluster& topic : mg.topics) {
    if (topic.members.size() < 2) continue;
    const std::size_t first = topic.representative;
    for (const Edge& e : mg.graph.out_edges(first)) {
      double boosters = 0.0;
      for (std::size_t v : topic.members) {
        if (v != first && mg.graph.has_edge(v, e.to)) boosters += mg.graph.weight(v, e.to);
      }
      if (boosters > 0.0) boosts[{e.to, first}] = boosters;
    }
  }
  for (const auto& [edge, boosters] : boosts) {
    const auto [from, to] = edge;
    const double position = std::exp(1.0 / (1.0 + static_cast<double>(mg.candidates[to].first_pos())));
    mg.graph.add_edge(from, to, boosters * options.alpha * position);
  }
  return mg;
}

std::vector<ScoredKeyword> multipartite_rank(const Document& doc, const Normalizer& normalizer,
                                             const MultipartiteOptions& options,
                                             const std::vector<std::string>* pos_tags) {
  const std::vector<Token> tokens = normalizer.analyze(doc.text);
  const MultipartiteGraph mg = build_multipartite_graph(tokens, options, pos_tags);
  if (mg.candidates.empty()) return {};
  const std::vector<double> scores = pagerank(mg.graph, options.pagerank);
  std::vector<RankedPhrase> ranked;
  for (std::size_t c = 0; c < mg.candidates.size(); ++c) {
    const Candidate& cand = mg.candidates[c];
    ranked.push_back({cand.surface, cand.norm, scores[c], cand.first_pos()});
  }
  return finalize_ranking(std::move(ranked), ScoreOrder::higher_is_better, options.k);
}

// ------------------------------------------------------------------- RaKUn

std::vector<MetaVertex> merge_meta_vertices(const std::vector<std::string>& words, std::size_t distance_threshold,
                                            std::size_t merge_min_length) {
  std::vector<MetaVertex> vertices;
  for (const std::string& word : words) {
    MetaVertex* target = nullptr;
    if (utf8::length(word) >= merge_min_length) {
      for (MetaVertex& v : vertices) {
        if (utf8::length(v.label) < merge_min_length) continue;
        const bool close_to_all = std::all_of(v.members.begin(), v.members.end(), [&](const std::string& m) {
          return levenshtein(m, word) <= distance_threshold;
        });
        if (close_to_all) {
          target = &v;
          break;
        }
      }
    }
    if (target) {
      target->members.push_back(word);
    } else {
      vertices.push_back({word, {word}});
    }
  }
  return vertices;
}

std::vector<ScoredKeyword> rakun(const Document& doc, const Normalizer& normalizer, const RakunOptions& options) {
  const std::vector<Token> tokens = normalizer.analyze(doc.text);

  std::vector<std::string> word_types;
  std::unordered_map<std::string, std::size_t> type_index;
  for (const Token& tok : tokens) {
    if (is_graph_word(tok) && type_index.try_emplace(tok.lower, word_types.size()).second) {
      word_types.push_back(tok.lower);
    }
  }
  if (word_types.empty()) return {};

  const std::vector<MetaVertex> vertices =
      merge_meta_vertices(word_types, options.distance_threshold, options.merge_min_length);
  std::unordered_map<std::string, std::size_t> vertex_of;
  WordGraph graph(false);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    graph.add_node(vertices[v].label);
    for (const std::string& m : vertices[v].members) vertex_of[m] = v;
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> token_vertex(tokens.size(), kNone);
  std::vector<std::size_t> vertex_first_pos(vertices.size(), kNone);
  std::size_t prev = kNone;
  std::size_t prev_sentence = kNone;
  for (const Token& tok : tokens) {
    if (tok.sent_idx != prev_sentence) {
      prev = kNone;
      prev_sentence = tok.sent_idx;
    }
    if (!tok.is_alphanumeric) {
      prev = kNone;
      continue;
    }
    if (!is_graph_word(tok)) continue;  // stopwords are skipped, not separators
    const std::size_t v = vertex_of.at(tok.lower);
    token_vertex[tok.tok_idx] = v;
    if (vertex_first_pos[v] == kNone) vertex_first_pos[v] = tok.tok_idx;
    if (prev != kNone) graph.add_edge(prev, v, 1.0);
    prev = v;
  }

  const std::vector<double> centrality = load_centrality(graph);
  std::vector<RankedPhrase> ranked;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    ranked.push_back({vertices[v].label, vertices[v].label, centrality[v], vertex_first_pos[v]});
  }

  std::vector<RankedPhrase> by_rank = ranked;
  sort_ranked(by_rank, ScoreOrder::higher_is_better);
  std::vector<bool> top(vertices.size(), false);
  const std::size_t n_top = std::min(by_rank.size(), options.top_nodes_factor * options.k);
  for (std::size_t r = 0; r < n_top; ++r) top[vertex_of.at(by_rank[r].norm)] = true;

  struct BigramCount {
    std::size_t count = 0;
    std::size_t first_pos = 0;
    std::string phrase;
  };
  std::map<std::pair<std::size_t, std::size_t>, BigramCount> bigrams;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const std::size_t a = token_vertex[i], b = token_vertex[i + 1];
    if (a == kNone || b == kNone || a == b || !top[a] || !top[b]) continue;
    if (tokens[i].sent_idx != tokens[i + 1].sent_idx) continue;
    BigramCount& bc = bigrams[{a, b}];
    if (bc.count++ == 0) {
      bc.first_pos = i;
      bc.phrase = tokens[i].lower + " " + tokens[i + 1].lower;
    }
  }
  for (const auto& [pair, bc] : bigrams) {
    if (bc.count < options.bigram_count_threshold) continue;
    const double score = 0.5 * (centrality[pair.first] + centrality[pair.second]);
    ranked.push_back({bc.phrase, bc.phrase, score, bc.first_pos});
  }
  return finalize_ranking(std::move(ranked), ScoreOrder::higher_is_better, options.k);
}

}  // namespace kwx
