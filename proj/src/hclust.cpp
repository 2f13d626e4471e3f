#include "kwx/hclust.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "kwx/error.hpp"

namespace kwx {

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::average: return "average";
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
  }
  return "average";
}

Linkage parse_linkage(std::string_view name) {
  if (name == "average") return Linkage::average;
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  throw UsageError("unknown linkage '" + std::string(name) + "'");
}

std::vector<MergeStep> agglomerate(const DistanceMatrix& distances, Linkage linkage) {
  const std::size_t n = distances.size();
  for (const auto& row : distances) {
    if (row.size() != n) throw UsageError("distance matrix must be square");
  }
  std::vector<MergeStep> merges;
  if (n < 2) return merges;

  // Working matrix indexed by slot; slot i holds cluster ids[i].
  DistanceMatrix d = distances;
  std::vector<std::size_t> ids(n), sizes(n, 1);
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<bool> active(n, true);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best_a = 0, best_b = 0;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_lo = 0, best_hi = 0;
    bool found = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!active[b]) continue;
        const double dist = d[a][b];
        const std::size_t lo = std::min(ids[a], ids[b]), hi = std::max(ids[a], ids[b]);
        if (!found || dist < best || (dist == best && std::pair(lo, hi) < std::pair(best_lo, best_hi))) {
          found = true;
          best = dist;
          best_a = a;
          best_b = b;
          best_lo = lo;
          best_hi = hi;
        }
      }
    }

    merges.push_back({best_lo, best_hi, best, sizes[best_a] + sizes[best_b]});
    // Lance-Williams update into slot best_a.
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == best_a || k == best_b) continue;
      double updated = 0.0;
      switch (linkage) {
        case Linkage::single: updated = std::min(d[best_a][k], d[best_b][k]); break;
        case Linkage::complete: updated = std::max(d[best_a][k], d[best_b][k]); break;
        case Linkage::average:
          updated = (static_cast<double>(sizes[best_a]) * d[best_a][k] +
                     static_cast<double>(sizes[best_b]) * d[best_b][k]) /
                    static_cast<double>(sizes[best_a] + sizes[best_b]);
          break;
      }
      d[best_a][k] = d[k][best_a] = updated;
    }
    sizes[best_a] += sizes[best_b];
    ids[best_a] = n + step;
    active[best_b] = false;
  }
  return merges;
}

std::vector<std::size_t> cut_tree(std::size_t n_leaves, const std::vector<MergeStep>& merges, double threshold) {
  // Union-find over cluster ids.
  std::vector<std::size_t> parent(n_leaves + merges.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < merges.size(); ++i) {
    if (merges[i].height > threshold) continue;
    const std::size_t id = n_leaves + i;
    parent[find(merges[i].left)] = id;
    parent[find(merges[i].right)] = id;
  }
  std::vector<std::size_t> labels(n_leaves);
  std::vector<std::size_t> root_label(parent.size(), std::numeric_limits<std::size_t>::max());
  std::size_t next = 0;
  for (std::size_t leaf = 0; leaf < n_leaves; ++leaf) {
    const std::size_t root = find(leaf);
    if (root_label[root] == std::numeric_limits<std::size_t>::max()) root_label[root] = next++;
    labels[leaf] = root_label[root];
  }
  return labels;
}

}  // namespace kwx
