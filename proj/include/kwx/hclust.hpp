#pragma once

#include <string_view>
#include <vector>

namespace kwx {

enum class Linkage { average, single, complete };

std::string_view to_string(Linkage linkage);
Linkage parse_linkage(std::string_view name);

// One merge step. Cluster ids follow the usual convention: leaves are
// 0..n-1, the cluster created by merge i gets id n+i. left < right.
struct MergeStep {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t size = 0;
};

using DistanceMatrix = std::vector<std::vector<double>>;

// Agglomerative clustering of a symmetric distance matrix; returns the n-1
// merges in order. At every step the closest pair of active clusters is
// merged; ties go to the pair with the smallest (left, right) ids.
// Throws UsageError for non-square input.
std::vector<MergeStep> agglomerate(const DistanceMatrix& distances, Linkage linkage);

// Flat clusters obtained by applying merges while height <= threshold.
// Returns a cluster index per leaf, numbered in order of first leaf.
std::vector<std::size_t> cut_tree(std::size_t n_leaves, const std::vector<MergeStep>& merges, double threshold);

}  // namespace kwx
