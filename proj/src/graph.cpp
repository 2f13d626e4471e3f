#include "kwx/graph.hpp"

#include <cmath>
#include <deque>
#include <stack>

#include "kwx/error.hpp"

namespace kwx {

std::size_t WordGraph::add_node(std::string label) {
  labels_.push_back(std::move(label));
  adjacency_.emplace_back();
  return labels_.size() - 1;
}

void WordGraph::upsert(std::size_t from, std::size_t to, double weight, bool accumulate) {
  for (Edge& e : adjacency_[from]) {
    if (e.to == to) {
      e.weight = accumulate ? e.weight + weight : weight;
      return;
    }
  }
  adjacency_[from].push_back({to, weight});
}

void WordGraph::add_edge(std::size_t from, std::size_t to, double weight) {
  if (from == to) return;
  if (!(weight >= 0.0)) throw UsageError("edge weights must be nonnegative");
  upsert(from, to, weight, true);
  if (!directed_) upsert(to, from, weight, true);
}

void WordGraph::set_edge(std::size_t from, std::size_t to, double weight) {
  if (from == to) return;
  if (!(weight >= 0.0)) throw UsageError("edge weights must be nonnegative");
  upsert(from, to, weight, false);
  if (!directed_) upsert(to, from, weight, false);
}

double WordGraph::weight(std::size_t from, std::size_t to) const {
  for (const Edge& e : adjacency_[from]) {
    if (e.to == to) return e.weight;
  }
  return 0.0;
}

bool WordGraph::has_edge(std::size_t from, std::size_t to) const {
  for (const Edge& e : adjacency_[from]) {
    if (e.to == to) return true;
  }
  return false;
}

std::size_t WordGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& edges : adjacency_) n += edges.size();
  return directed_ ? n : n / 2;
}

std::vector<double> pagerank(const WordGraph& graph, const PageRankOptions& options) {
  const std::size_t n = graph.size();
  if (n == 0) throw UsageError("pagerank: empty graph");
  const double d = options.damping;

  std::vector<double> out_weight(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (const Edge& e : graph.out_edges(u)) out_weight[u] += e.weight;
  }

  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> score(n, uniform), next(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (out_weight[u] <= 0.0) dangling += score[u];
    }
    const double base = (1.0 - d) * uniform + d * dangling * uniform;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t u = 0; u < n; ++u) {
      if (out_weight[u] <= 0.0) continue;
      const double share = d * score[u] / out_weight[u];
      for (const Edge& e : graph.out_edges(u)) next[e.to] += share * e.weight;
    }
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) delta += std::abs(next[v] - score[v]);
    score.swap(next);
    if (delta < options.tolerance) break;
  }

  double total = 0.0;
  for (double s : score) total += s;
  for (double& s : score) s /= total;
  return score;
}

std::vector<double> load_centrality(const WordGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<double> centrality(n, 0.0);
  if (n < 3) return centrality;

  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::stack<std::size_t> order;
    std::deque<std::size_t> queue;
    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      order.push(v);
      for (const Edge& e : graph.out_edges(v)) {
        const std::size_t w = e.to;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    while (!order.empty()) {
      const std::size_t w = order.top();
      order.pop();
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality[w] += delta[w];
    }
  }
  const double pairs = static_cast<double>((n - 1) * (n - 2));
  for (double& c : centrality) c /= pairs;
  return centrality;
}

}  // namespace kwx
