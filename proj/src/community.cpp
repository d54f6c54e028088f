#include "cnfscope/community.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace cnfscope {

Partition Partition::from_labels(const std::vector<std::uint32_t> &labels) {
  Partition p;
  p.assignment.resize(labels.size());
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = ids.try_emplace(labels[i], static_cast<std::uint32_t>(ids.size()));
    p.assignment[i] = it->second;
  }
  p.community_count = ids.size();
  return p;
}

double modularity(const Graph &g, const Partition &p) {
  if (p.assignment.size() != g.node_count())
    throw std::invalid_argument("partition does not match graph size");
  std::vector<double> inside(p.community_count, 0.0), strength(p.community_count, 0.0);
  double total = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto cu = p.assignment[u];
    if (cu >= p.community_count)
      throw std::invalid_argument("community id out of range");
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      strength[cu] += ws[i];
      if (u < nb[i]) {
        total += ws[i];
        if (p.assignment[nb[i]] == cu)
          inside[cu] += ws[i];
      }
    }
  }
  if (total <= 0.0)
    return 0.0;
  double q = 0.0;
  for (std::size_t c = 0; c < p.community_count; ++c) {
    const double share = strength[c] / (2.0 * total);
    q += inside[c] / total - share * share;
  }
  return q;
}

namespace {

// Weighted graph with self-loops, used for the folded levels.
struct LevelGraph {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;
  std::vector<double> loops;
  std::vector<double> strength;
  double total = 0.0;

  std::size_t size() const { return loops.size(); }

  void finish() {
    const std::size_t n = size();
    strength.assign(n, 0.0);
    total = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e)
        strength[u] += weights[e];
      strength[u] += 2.0 * loops[u];
      total += strength[u];
    }
    total /= 2.0;
  }
};

LevelGraph from_graph(const Graph &g) {
  LevelGraph lg;
  const std::size_t n = g.node_count();
  lg.loops.assign(n, 0.0);
  lg.offsets.assign(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    lg.targets.insert(lg.targets.end(), nb.begin(), nb.end());
    lg.weights.insert(lg.weights.end(), ws.begin(), ws.end());
    lg.offsets[u + 1] = lg.targets.size();
  }
  lg.finish();
  return lg;
}

double level_modularity(const LevelGraph &lg, const std::vector<std::uint32_t> &comm,
                        std::size_t communities) {
  if (lg.total <= 0.0)
    return 0.0;
  std::vector<double> inside(communities, 0.0), tot(communities, 0.0);
  for (std::size_t u = 0; u < lg.size(); ++u) {
    tot[comm[u]] += lg.strength[u];
    inside[comm[u]] += lg.loops[u];
    for (std::size_t e = lg.offsets[u]; e < lg.offsets[u + 1]; ++e)
      if (comm[lg.targets[e]] == comm[u])
        inside[comm[u]] += lg.weights[e] / 2.0; // each edge seen from both ends
  }
  double q = 0.0;
  for (std::size_t c = 0; c < communities; ++c) {
    const double share = tot[c] / (2.0 * lg.total);
    q += inside[c] / lg.total - share * share;
  }
  return q;
}

// One round of local moving, from singletons unless `keep` is set. With
// `keep`, a node may also leave for an empty community. Returns the number
// of passes run; `comm` is left with contiguous ids.
int local_moving(const LevelGraph &lg, std::vector<std::uint32_t> &comm,
                 std::mt19937_64 &rng, double min_gain, bool keep = false) {
  const std::size_t n = lg.size();
  if (!keep) {
    comm.resize(n);
    std::iota(comm.begin(), comm.end(), 0u);
  }
  std::vector<double> tot(n, 0.0);
  std::vector<std::uint32_t> members(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    tot[comm[u]] += lg.strength[u];
    ++members[comm[u]];
  }
  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  const double two_w = 2.0 * lg.total;
  double q = level_modularity(lg, comm, n);
  int passes = 0;
  if (lg.total <= 0.0)
    return passes;
  while (true) {
    ++passes;
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t moves = 0;
    for (std::uint32_t u : order) {
      const std::uint32_t own = comm[u];
      const double k = lg.strength[u];
      touched.clear();
      for (std::size_t e = lg.offsets[u]; e < lg.offsets[u + 1]; ++e) {
        const std::uint32_t c = comm[lg.targets[e]];
        if (link[c] == 0.0)
          touched.push_back(c);
        link[c] += lg.weights[e];
      }
      tot[own] -= k;
      --members[own];
      // Gain of joining c, up to a constant factor: k_{u,c} - tot_c k_u / 2W.
      std::uint32_t best = own;
      double best_gain = link[own] - tot[own] * k / two_w;
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        if (c == own)
          continue;
        const double gain = link[c] - tot[c] * k / two_w;
        if (gain > best_gain + 1e-12) {
          best = c;
          best_gain = gain;
        }
      }
      if (keep && members[own] > 0 && best_gain < -1e-12) {
        // ids are < n and at most n communities exist, so one is free
        std::uint32_t free = 0;
        while (members[free] > 0)
          ++free;
        best = free;
      }
      tot[best] += k;
      ++members[best];
      if (best != own) {
        comm[u] = best;
        ++moves;
      }
      for (std::uint32_t c : touched)
        link[c] = 0.0;
      link[own] = 0.0;
    }
    if (moves == 0)
      break;
    const double next_q = level_modularity(lg, comm, n);
    const double gained = next_q - q;
    q = next_q;
    if (gained <= min_gain)
      break;
  }
  auto p = Partition::from_labels(comm);
  comm = std::move(p.assignment);
  return passes;
}

LevelGraph fold(const LevelGraph &lg, const std::vector<std::uint32_t> &comm,
                std::size_t communities) {
  struct Arc {
    std::uint32_t a, b;
    double w;
  };
  std::vector<Arc> arcs;
  LevelGraph out;
  out.loops.assign(communities, 0.0);
  for (std::size_t u = 0; u < lg.size(); ++u) {
    const auto cu = comm[u];
    out.loops[cu] += lg.loops[u];
    for (std::size_t e = lg.offsets[u]; e < lg.offsets[u + 1]; ++e) {
      const auto cv = comm[lg.targets[e]];
      if (cu == cv)
        out.loops[cu] += lg.weights[e] / 2.0;
      else
        arcs.push_back({cu, cv, lg.weights[e]});
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc &x, const Arc &y) {
    if (x.a != y.a)
      return x.a < y.a;
    if (x.b != y.b)
      return x.b < y.b;
    return x.w < y.w;
  });
  out.offsets.assign(communities + 1, 0);
  for (std::size_t i = 0; i < arcs.size();) {
    std::size_t j = i;
    double w = 0.0;
    while (j < arcs.size() && arcs[j].a == arcs[i].a && arcs[j].b == arcs[i].b)
      w += arcs[j++].w;
    out.targets.push_back(arcs[i].b);
    out.weights.push_back(w);
    ++out.offsets[arcs[i].a + 1];
    i = j;
  }
  for (std::size_t c = 0; c < communities; ++c)
    out.offsets[c + 1] += out.offsets[c];
  out.finish();
  return out;
}

// Kernighan-Lin style sweep on the node level: every node moves once, to
// the best target even when that lowers Q, and the best prefix of the
// sequence is kept. Returns the modularity gained (0 if none).
double kl_sweep(const LevelGraph &lg, std::vector<std::uint32_t> &comm) {
  const std::size_t n = lg.size();
  if (lg.total <= 0.0)
    return 0.0;
  const double w = lg.total;
  std::vector<double> tot(n, 0.0);
  std::vector<std::uint32_t> members(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    tot[comm[u]] += lg.strength[u];
    ++members[comm[u]];
  }
  std::vector<bool> locked(n, false);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> history; // (node, from)
  std::vector<double> link(n, 0.0);
  double gained = 0.0, best = 0.0;
  std::size_t best_len = 0;

  for (std::size_t step = 0; step < n; ++step) {
    double top = -std::numeric_limits<double>::infinity();
    std::uint32_t top_u = 0, top_c = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
      if (locked[u])
        continue;
      const std::uint32_t own = comm[u];
      const double k = lg.strength[u];
      for (std::size_t e = lg.offsets[u]; e < lg.offsets[u + 1]; ++e)
        link[comm[lg.targets[e]]] += lg.weights[e];
      const double stay = link[own] / w - k * (tot[own] - k) / (2.0 * w * w);
      auto consider = [&](std::uint32_t c) {
        const double gain = link[c] / w - k * tot[c] / (2.0 * w * w) - stay;
        if (gain > top + 1e-12) {
          top = gain;
          top_u = u;
          top_c = c;
        }
      };
      std::vector<std::uint32_t> targets;
      for (std::size_t e = lg.offsets[u]; e < lg.offsets[u + 1]; ++e)
        if (comm[lg.targets[e]] != own)
          targets.push_back(comm[lg.targets[e]]);
      if (members[own] > 1) {
        std::uint32_t free = 0;
        while (members[free] > 0)
          ++free;
        targets.push_back(free);
      }
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      for (auto c : targets)
        consider(c);
      for (std::size_t e = lg.offsets[u]; e < lg.offsets[u + 1]; ++e)
        link[comm[lg.targets[e]]] = 0.0;
    }
    if (top == -std::numeric_limits<double>::infinity())
      break;
    const std::uint32_t from = comm[top_u];
    tot[from] -= lg.strength[top_u];
    --members[from];
    tot[top_c] += lg.strength[top_u];
    ++members[top_c];
    comm[top_u] = top_c;
    locked[top_u] = true;
    history.emplace_back(top_u, from);
    gained += top;
    if (gained > best + 1e-12) {
      best = gained;
      best_len = history.size();
    }
  }
  while (history.size() > best_len) {
    comm[history.back().first] = history.back().second;
    history.pop_back();
  }
  return best;
}

ModularityResult fold_once(const Graph &g, std::uint64_t seed, double min_gain) {
  ModularityResult res;
  const std::size_t n = g.node_count();
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> flat(n);
  std::iota(flat.begin(), flat.end(), 0u);

  const LevelGraph base = from_graph(g);
  double q = level_modularity(base, flat, n);
  LevelGraph lg = base;
  while (true) {
    while (true) {
      std::vector<std::uint32_t> comm;
      res.passes += local_moving(lg, comm, rng, min_gain);
      ++res.levels;
      const std::size_t communities =
          comm.empty() ? 0 : *std::max_element(comm.begin(), comm.end()) + 1;
      const double next_q = level_modularity(lg, comm, communities);
      const bool improved = next_q - q > min_gain;
      if (next_q > q) {
        for (auto &c : flat)
          c = comm[c];
        q = next_q;
      }
      if (!improved || communities == lg.size())
        break;
      lg = fold(lg, comm, communities);
    }

    // Refinement: let single nodes move again, then fold from there.
    auto refined = Partition::from_labels(flat).assignment;
    res.passes += local_moving(base, refined, rng, min_gain, true);
    std::size_t communities =
        refined.empty() ? 0 : *std::max_element(refined.begin(), refined.end()) + 1;
    double next_q = level_modularity(base, refined, communities);
    if (next_q - q <= min_gain && n <= kSweepLimit) {
      refined = flat;
      kl_sweep(base, refined);
      refined = Partition::from_labels(refined).assignment;
      communities = refined.empty() ? 0 : *std::max_element(refined.begin(), refined.end()) + 1;
      next_q = level_modularity(base, refined, communities);
    }
    if (next_q - q <= min_gain)
      break;
    flat = refined;
    q = next_q;
    lg = fold(base, flat, communities);
  }
  res.partition = Partition::from_labels(flat);
  res.q = modularity(g, res.partition);
  return res;
}

} // namespace

ModularityResult fold_communities(const Graph &g, std::uint64_t seed, double min_gain) {
  auto best = fold_once(g, seed, min_gain);
  if (g.node_count() > kSweepLimit)
    return best;
  std::mt19937_64 seeds(seed);
  for (std::size_t i = 1; i < kSmallGraphRestarts; ++i) {
    auto next = fold_once(g, seeds(), min_gain);
    if (next.q > best.q + 1e-12)
      best = std::move(next);
  }
  return best;
}

} // namespace cnfscope
