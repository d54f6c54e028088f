#include "cnfscope/graph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

namespace cnfscope {

double Graph::strength(NodeId u) const {
  double s = 0.0;
  for (double w : weights(u))
    s += w;
  return s;
}

double Graph::total_weight() const {
  double total = 0.0;
  for (NodeId u = 0; u < node_count(); ++u) {
    auto nb = neighbors(u);
    auto ws = weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (u < nb[i])
        total += ws[i];
  }
  return total;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void GraphBuilder::add_edge(NodeId u, NodeId v, double weight) {
  if (u >= kinds_.size() || v >= kinds_.size())
    throw std::out_of_range("edge endpoint out of range");
  if (u == v)
    return;
  if (u > v)
    std::swap(u, v);
  edges_.push_back({u, v, weight});
}

Graph GraphBuilder::build(bool unit_weights) && {
  // Sorting on the weight too makes merged sums independent of insertion order.
  std::sort(edges_.begin(), edges_.end(), [](const RawEdge &a, const RawEdge &b) {
    if (a.u != b.u)
      return a.u < b.u;
    if (a.v != b.v)
      return a.v < b.v;
    return a.w < b.w;
  });
  std::vector<RawEdge> merged;
  merged.reserve(edges_.size());
  for (const auto &e : edges_) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
      merged.back().w += e.w;
    else
      merged.push_back(e);
  }
  edges_.clear();
  edges_.shrink_to_fit();
  if (unit_weights)
    for (auto &e : merged)
      e.w = 1.0;

  Graph g;
  const std::size_t n = kinds_.size();
  g.kinds_ = std::move(kinds_);
  std::vector<std::size_t> deg(n, 0);
  for (const auto &e : merged) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.targets_.resize(g.offsets_[n]);
  g.weights_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Lower-id neighbors first, then higher-id ones; both runs come out sorted.
  for (const auto &e : merged) {
    g.targets_[cursor[e.v]] = e.u;
    g.weights_[cursor[e.v]++] = e.w;
  }
  for (const auto &e : merged) {
    g.targets_[cursor[e.u]] = e.v;
    g.weights_[cursor[e.u]++] = e.w;
  }
  return g;
}

namespace {

std::vector<NodeId> clause_vars(const Clause &c) {
  std::vector<NodeId> vars;
  vars.reserve(c.size());
  for (Literal lit : c)
    vars.push_back(static_cast<NodeId>(var_of(lit) - 1));
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

} // namespace

Graph build_vig(const CnfFormula &f, bool weighted) {
  validate(f);
  GraphBuilder b(static_cast<std::size_t>(f.num_vars), NodeKind::variable);
  std::size_t pairs = 0;
  for (const auto &c : f.clauses)
    pairs += c.size() * (c.size() ? c.size() - 1 : 0) / 2;
  b.reserve(pairs);
  for (const auto &c : f.clauses) {
    auto vars = clause_vars(c);
    const std::size_t k = vars.size();
    if (k < 2)
      continue;
    const double w = 2.0 / (static_cast<double>(k) * static_cast<double>(k - 1));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        b.add_edge(vars[i], vars[j], w);
  }
  return std::move(b).build(!weighted);
}

Graph build_cvig(const CnfFormula &f, bool weighted) {
  validate(f);
  const std::size_t n = static_cast<std::size_t>(f.num_vars);
  std::vector<NodeKind> kinds(n, NodeKind::variable);
  kinds.resize(n + f.clauses.size(), NodeKind::clause);
  GraphBuilder b(std::move(kinds));
  b.reserve(f.num_literals());
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
    auto vars = clause_vars(f.clauses[ci]);
    const double w = vars.empty() ? 0.0 : 1.0 / static_cast<double>(vars.size());
    for (NodeId v : vars)
      b.add_edge(v, static_cast<NodeId>(n + ci), w);
  }
  return std::move(b).build(!weighted);
}

Graph build_cig(const CnfFormula &f) {
  validate(f);
  const std::size_t n = static_cast<std::size_t>(f.num_vars);
  std::vector<std::vector<NodeId>> pos(n + 1), neg(n + 1);
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci)
    for (Literal lit : f.clauses[ci])
      (lit > 0 ? pos : neg)[var_of(lit)].push_back(static_cast<NodeId>(ci));
  GraphBuilder b(f.clauses.size(), NodeKind::clause);
  for (std::size_t v = 1; v <= n; ++v)
    for (NodeId a : pos[v])
      for (NodeId c : neg[v])
        b.add_edge(a, c, 1.0);
  return std::move(b).build(true);
}

Graph complement(const Graph &g) {
  const std::size_t n = g.node_count();
  std::vector<NodeKind> kinds(n);
  for (NodeId u = 0; u < n; ++u)
    kinds[u] = g.kind(u);
  GraphBuilder b(std::move(kinds));
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v))
        b.add_edge(u, v);
  return std::move(b).build(true);
}

void write_edge_list(const Graph &g, std::ostream &out) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (u < nb[i])
        out << u << ' ' << nb[i] << ' ' << ws[i] << '\n';
  }
}

std::vector<int> bfs_distances(const Graph &g, NodeId source,
                               std::optional<int> radius_cap) {
  if (source >= g.node_count())
    throw std::out_of_range("BFS source out of range");
  std::vector<int> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> frontier{source}, next;
  dist[source] = 0;
  int depth = 0;
  while (!frontier.empty() && (!radius_cap || depth < *radius_cap)) {
    ++depth;
    next.clear();
    for (NodeId u : frontier)
      for (NodeId v : g.neighbors(u))
        if (dist[v] == kUnreachable) {
          dist[v] = depth;
          next.push_back(v);
        }
    frontier.swap(next);
  }
  return dist;
}

std::vector<std::uint32_t> connected_components(const Graph &g, std::size_t *count) {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(g.node_count(), unset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (comp[s] != unset)
      continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u))
        if (comp[v] == unset) {
          comp[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  if (count)
    *count = next;
  return comp;
}

bool is_bipartite(const Graph &g) {
  std::vector<signed char> color(g.node_count(), -1);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (color[s] >= 0)
      continue;
    color[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (color[v] < 0) {
          color[v] = static_cast<signed char>(1 - color[u]);
          stack.push_back(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

// Farthest node from `source` and its distance.
std::pair<NodeId, int> farthest(const Graph &g, NodeId source) {
  auto dist = bfs_distances(g, source);
  NodeId best = source;
  int far = 0;
  for (NodeId v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnreachable && dist[v] > far) {
      far = dist[v];
      best = v;
    }
  return {best, far};
}

} // namespace

int exact_diameter(const Graph &g) {
  int diameter = 0;
  for (NodeId s = 0; s < g.node_count(); ++s)
    diameter = std::max(diameter, farthest(g, s).second);
  return diameter;
}

GraphStats graph_stats(const Graph &g, std::size_t sample_pairs,
                       std::uint64_t seed, std::size_t exact_limit) {
  GraphStats stats;
  const std::size_t n = g.node_count();
  auto comp = connected_components(g, &stats.connected_components);
  if (n == 0)
    return stats;

  if (n <= exact_limit) {
    stats.diameter = exact_diameter(g);
  } else {
    stats.diameter_exact = false;
    // Double sweep from the first node of every non-trivial component.
    std::vector<char> done(stats.connected_components, 0);
    for (NodeId s = 0; s < n; ++s) {
      if (done[comp[s]] || g.degree(s) == 0)
        continue;
      done[comp[s]] = 1;
      auto [far, d1] = farthest(g, s);
      auto [far2, d2] = farthest(g, far);
      (void)far2;
      stats.diameter = std::max({stats.diameter, d1, d2});
    }
  }

  // Typical distance: random reachable pairs, grouped by source to share BFS.
  std::vector<NodeId> with_edges;
  for (NodeId u = 0; u < n; ++u)
    if (g.degree(u) > 0)
      with_edges.push_back(u);
  if (with_edges.empty() || sample_pairs == 0)
    return stats;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_source(0, with_edges.size() - 1);
  const std::size_t sources = std::min<std::size_t>(sample_pairs, 64);
  double total = 0.0;
  std::size_t taken = 0;
  for (std::size_t s = 0; s < sources; ++s) {
    const std::size_t quota = sample_pairs / sources + (s < sample_pairs % sources ? 1 : 0);
    NodeId src = with_edges[pick_source(rng)];
    auto dist = bfs_distances(g, src);
    std::vector<NodeId> reachable;
    for (NodeId v = 0; v < n; ++v)
      if (v != src && dist[v] != kUnreachable)
        reachable.push_back(v);
    std::uniform_int_distribution<std::size_t> pick_target(0, reachable.size() - 1);
    for (std::size_t k = 0; k < quota; ++k) {
      total += dist[reachable[pick_target(rng)]];
      ++taken;
    }
  }
  stats.sampled_pairs = taken;
  stats.typical_distance = taken ? total / static_cast<double>(taken) : 0.0;
  return stats;
}

} // namespace cnfscope
