#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cnfscope/cnf.hpp"

namespace cnfscope {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { variable, clause };

struct Neighbor {
  NodeId node;
  double weight;
};

/// Undirected graph in compressed adjacency form. Adjacency lists are sorted
/// by neighbor id, free of self-loops and parallel edges.
class Graph {
public:
  Graph() = default;

  std::size_t node_count() const { return kinds_.size(); }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::span<const double> weights(NodeId u) const {
    return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  NodeKind kind(NodeId u) const { return kinds_[u]; }

  /// Sum of incident edge weights.
  double strength(NodeId u) const;
  /// Sum of all edge weights, each undirected edge counted once.
  double total_weight() const;

  bool has_edge(NodeId u, NodeId v) const;

private:
  friend class GraphBuilder;
  std::vector<NodeKind> kinds_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
};

/// Accumulates weighted edges; parallel edges are merged by summing their
/// weights, self-loops are dropped.
class GraphBuilder {
public:
  explicit GraphBuilder(std::vector<NodeKind> kinds) : kinds_(std::move(kinds)) {}
  GraphBuilder(std::size_t nodes, NodeKind kind)
      : kinds_(nodes, kind) {}

  void add_edge(NodeId u, NodeId v, double weight = 1.0);
  void reserve(std::size_t edges) { edges_.reserve(edges); }

  /// When `unit_weights` is set every retained edge gets weight 1.
  Graph build(bool unit_weights = false) &&;

private:
  struct RawEdge {
    NodeId u, v;
    double w;
  };
  std::vector<NodeKind> kinds_;
  std::vector<RawEdge> edges_;
};

/// Variable incidence graph: node v-1 for variable v; variables sharing a
/// clause are adjacent. Weighted mode gives each pair of a clause weight
/// 1/(k choose 2) for k distinct variables.
Graph build_vig(const CnfFormula &f, bool weighted);

/// Clause-variable incidence graph: variable nodes 0..n-1, then clause nodes
/// n..n+m-1. Weighted mode gives each clause edge 1/k.
Graph build_cvig(const CnfFormula &f, bool weighted);

/// Clause incidence graph: clauses adjacent when one contains a literal whose
/// complement occurs in the other.
Graph build_cig(const CnfFormula &f);

/// Complement graph (for small graphs only).
Graph complement(const Graph &g);

/// Exports `u v w` lines, one per undirected edge with u < v.
void write_edge_list(const Graph &g, std::ostream &out);

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Hop distances from `source`; nodes farther than `radius_cap` are reported
/// as kUnreachable.
std::vector<int> bfs_distances(const Graph &g, NodeId source,
                               std::optional<int> radius_cap = std::nullopt);

/// Component id per node, numbered in order of their smallest node.
std::vector<std::uint32_t> connected_components(const Graph &g,
                                                std::size_t *count = nullptr);

bool is_bipartite(const Graph &g);

struct GraphStats {
  int diameter = 0;
  /// False when the diameter is a double-sweep lower bound.
  bool diameter_exact = true;
  double typical_distance = 0.0;
  std::size_t connected_components = 0;
  std::size_t sampled_pairs = 0;
};

/// Diameter is the maximum over components. It is exact up to
/// `exact_limit` nodes and a double-sweep lower bound beyond.
GraphStats graph_stats(const Graph &g, std::size_t sample_pairs,
                       std::uint64_t seed, std::size_t exact_limit = 2000);

/// Maximum finite eccentricity over all nodes (all-pairs BFS).
int exact_diameter(const Graph &g);

} // namespace cnfscope
