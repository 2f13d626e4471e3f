#pragma once

#include <string>
#include <vector>

namespace kwx {

struct Edge {
  std::size_t to = 0;
  double weight = 0.0;
};

/// Weighted word graph over labelled nodes. Undirected graphs store each edge
/// in both adjacency lists. Self-loops are never stored.
class WordGraph {
 public:
  explicit WordGraph(bool directed = false) : directed_(directed) {}

  std::size_t add_node(std::string label);
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  bool directed() const { return directed_; }

  const std::string& label(std::size_t node) const { return labels_[node]; }
  const std::vector<Edge>& out_edges(std::size_t node) const { return adjacency_[node]; }

  // Adds `weight` to the edge (creating it if needed). Self-loops are ignored;
  // negative weights throw UsageError.
  void add_edge(std::size_t from, std::size_t to, double weight = 1.0);
  // Sets the edge weight, replacing any accumulated value.
  void set_edge(std::size_t from, std::size_t to, double weight);
  // Weight of from->to, 0 when absent.
  double weight(std::size_t from, std::size_t to) const;
  bool has_edge(std::size_t from, std::size_t to) const;
  std::size_t edge_count() const;

 private:
  void upsert(std::size_t from, std::size_t to, double weight, bool accumulate);

  bool directed_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Edge>> adjacency_;
};

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-6;  // L1 change between iterations
  int max_iterations = 200;
};

// Weighted PageRank with uniform teleport. Nodes without outgoing weight
// spread their mass uniformly. Scores sum to 1. Throws UsageError on an empty
// graph.
std::vector<double> pagerank(const WordGraph& graph, const PageRankOptions& options = {});

// Shortest-path (hop count) load of every node: over all ordered pairs
// (s, t) with s != v != t, the fraction of shortest s-t paths that pass
// through v, divided by the number of such pairs. Exact, computed with
// Brandes' dependency accumulation.
std::vector<double> load_centrality(const WordGraph& graph);

}  // namespace kwx
