#pragma once

#include <cstdint>
#include <vector>

#include "cnfscope/graph.hpp"

namespace cnfscope {

struct Partition {
  /// Community of each node, ids contiguous from 0.
  std::vector<std::uint32_t> assignment;
  std::size_t community_count = 0;

  /// Renumbers ids to 0..k-1 in order of first appearance.
  static Partition from_labels(const std::vector<std::uint32_t> &labels);
};

/// Weighted Newman-Girvan modularity
///   Q = sum_c [ w_in(c) / W - (s(c) / 2W)^2 ]
/// with W the total edge weight, w_in(c) the weight inside c and s(c) the
/// summed strength of its nodes. Q = 0 on graphs without edges.
double modularity(const Graph &g, const Partition &p);

struct ModularityResult {
  double q = 0.0;
  Partition partition;
  int levels = 0;
  int passes = 0;
};

/// Graphs up to this size also get node-level sweeps that may pass through
/// worse partitions (quadratic cost).
inline constexpr std::size_t kSweepLimit = 2000;
/// Independent seeded runs on such graphs; the best Q is kept.
inline constexpr std::size_t kSmallGraphRestarts = 8;

/// Multilevel modularity maximisation: local moving from singletons
/// followed by folding each community into a single node, repeated until a
/// level improves Q by no more than `min_gain`. The result is then refined
/// by single-node moves on the original graph (plus a Kernighan-Lin style
/// sweep up to kSweepLimit nodes) and folded again while Q improves.
/// Deterministic per seed.
ModularityResult fold_communities(const Graph &g, std::uint64_t seed,
                                  double min_gain = 1e-6);

} // namespace cnfscope
