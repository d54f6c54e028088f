#include "cnfscope/fractal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace cnfscope {

std::vector<NodeId> center_order(const Graph &g, CenterOrdering ordering) {
  std::vector<NodeId> order(g.node_count());
  for (NodeId u = 0; u < order.size(); ++u)
    order[u] = u;
  if (ordering == CenterOrdering::desc_degree)
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return g.degree(a) > g.degree(b);
    });
  else
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return g.degree(a) < g.degree(b);
    });
  return order;
}

namespace {

// Marks every node within `depth` hops of `center` as burned. `stamp` is a
// per-node visit marker reused across calls.
class Burner {
public:
  explicit Burner(const Graph &g) : g_(g), stamp_(g.node_count(), 0) {}

  void burn(NodeId center, int depth, std::vector<char> &burned) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    frontier_.assign(1, center);
    stamp_[center] = epoch_;
    burned[center] = 1;
    for (int level = 0; level < depth && !frontier_.empty(); ++level) {
      next_.clear();
      for (NodeId u : frontier_)
        for (NodeId v : g_.neighbors(u))
          if (stamp_[v] != epoch_) {
            stamp_[v] = epoch_;
            burned[v] = 1;
            next_.push_back(v);
          }
      frontier_.swap(next_);
    }
  }

private:
  const Graph &g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> frontier_, next_;
};

CoverResult greedy_cover_ordered(const Graph &g, int r,
                                 const std::vector<NodeId> &order,
                                 Burner &burner) {
  CoverResult res;
  std::vector<char> burned(g.node_count(), 0);
  for (NodeId c : order) {
    if (burned[c])
      continue;
    // The center itself is unburned, so this circle always burns something.
    res.centers.push_back(c);
    burner.burn(c, r - 1, burned);
  }
  res.count = res.centers.size();
  return res;
}

// Bitmask of nodes at distance < radius from each node.
std::vector<std::uint32_t> ball_masks(const Graph &g, int radius) {
  std::vector<std::uint32_t> masks(g.node_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto dist = bfs_distances(g, u, radius - 1);
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (dist[v] != kUnreachable)
        masks[u] |= std::uint32_t{1} << v;
  }
  return masks;
}

bool cover_within(const std::vector<std::uint32_t> &balls, std::uint32_t covered,
                  std::uint32_t full, std::size_t budget) {
  if (covered == full)
    return true;
  if (budget == 0)
    return false;
  // Branch on the centers able to reach the lowest uncovered node.
  const int u = std::countr_zero(~covered & full);
  for (std::size_t c = 0; c < balls.size(); ++c)
    if ((balls[c] >> u) & 1u)
      if (cover_within(balls, covered | balls[c], full, budget - 1))
        return true;
  return false;
}

} // namespace

CoverResult greedy_cover(const Graph &g, int r, CenterOrdering ordering) {
  if (r < 1)
    throw std::invalid_argument("radius must be at least 1");
  Burner burner(g);
  return greedy_cover_ordered(g, r, center_order(g, ordering), burner);
}

std::size_t exact_cover_count(const Graph &g, int r) {
  if (r < 1)
    throw std::invalid_argument("radius must be at least 1");
  const std::size_t n = g.node_count();
  if (n > kExactCoverLimit)
    throw std::invalid_argument("exact cover limited to " +
                                std::to_string(kExactCoverLimit) + " nodes");
  if (n == 0)
    return 0;
  auto balls = ball_masks(g, r);
  const std::uint32_t full = n == 32 ? ~0u : ((std::uint32_t{1} << n) - 1);
  for (std::size_t k = 1; k <= n; ++k)
    if (cover_within(balls, 0, full, k))
      return k;
  return n;
}

std::size_t exact_box_cover_count(const Graph &g, int l) {
  if (l < 1)
    throw std::invalid_argument("box size must be at least 1");
  const std::size_t n = g.node_count();
  if (n > kExactBoxLimit)
    throw std::invalid_argument("exact box cover limited to " +
                                std::to_string(kExactBoxLimit) + " nodes");
  if (n == 0)
    return 0;
  auto close = ball_masks(g, l);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<char> is_box(std::size_t{full} + 1, 0);
  is_box[0] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    is_box[mask] = is_box[rest] && (close[low] & rest) == rest;
  }
  // Boxes are closed under subsets, so a minimum cover is a minimum partition.
  std::vector<std::uint8_t> best(std::size_t{full} + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t others = mask ^ low;
    std::uint8_t b = 0xff;
    for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
      if (is_box[sub | low])
        b = std::min<std::uint8_t>(b, static_cast<std::uint8_t>(1 + best[others ^ sub]));
      if (sub == 0)
        break;
    }
    best[mask] = b;
  }
  return best[full];
}

std::optional<int> exact_max_radius(const Graph &g) {
  if (g.node_count() == 0)
    return std::nullopt;
  int best = kUnreachable;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    auto dist = bfs_distances(g, s);
    int ecc = 0;
    for (int d : dist) {
      if (d == kUnreachable)
        return std::nullopt;
      ecc = std::max(ecc, d);
    }
    best = std::min(best, ecc);
  }
  return best + 1;
}

double CoverCurve::normalized(int r) const {
  return static_cast<double>(at(r)) / static_cast<double>(counts.front());
}

CoverCurve CoverCurve::clamped() const {
  CoverCurve out = *this;
  for (std::size_t i = 1; i < out.counts.size(); ++i)
    out.counts[i] = std::min(out.counts[i], out.counts[i - 1]);
  out.monotone_violations = 0;
  out.r_max.reset();
  for (std::size_t i = 0; i < out.counts.size(); ++i)
    if (out.counts[i] == 1) {
      out.r_max = static_cast<int>(i + 1);
      out.counts.resize(i + 1);
      break;
    }
  return out;
}

CoverCurve cover_curve(const Graph &g, std::optional<int> r_stop,
                       CenterOrdering ordering) {
  CoverCurve curve;
  if (g.node_count() == 0)
    return curve;
  std::size_t components = 0;
  connected_components(g, &components);
  const auto order = center_order(g, ordering);
  Burner burner(g);
  const int limit = r_stop ? *r_stop : static_cast<int>(g.node_count()) + 1;
  for (int r = 1; r <= limit; ++r) {
    const std::size_t count = greedy_cover_ordered(g, r, order, burner).count;
    if (!curve.counts.empty() && count > curve.counts.back())
      ++curve.monotone_violations;
    curve.counts.push_back(count);
    if (count == 1) {
      curve.r_max = r;
      break;
    }
    // One circle per component: no larger radius can do better.
    if (count == components && !r_stop)
      break;
  }
  return curve;
}

DimensionFit fit_dimension(const CoverCurve &curve, int r_lo, int r_hi) {
  if (r_lo < 1 || r_hi < r_lo)
    throw std::invalid_argument("invalid fit window");
  const int hi = std::min(r_hi, curve.r_stop());
  if (hi - r_lo + 1 < 2)
    throw std::invalid_argument("fewer than two points in the fit window");

  std::vector<double> xs_log, xs_lin, ys;
  for (int r = r_lo; r <= hi; ++r) {
    xs_log.push_back(std::log(static_cast<double>(r)));
    xs_lin.push_back(static_cast<double>(r));
    ys.push_back(std::log(static_cast<double>(curve.at(r))));
  }
  auto least_squares = [&](const std::vector<double> &xs) {
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double residual = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      residual = std::max(residual, std::abs(ys[i] - (intercept + slope * xs[i])));
    return std::tuple{slope, intercept, residual};
  };

  DimensionFit fit;
  fit.r_lo = r_lo;
  fit.r_hi = hi;
  auto [s1, i1, e1] = least_squares(xs_log);
  auto [s2, i2, e2] = least_squares(xs_lin);
  fit.d = -s1;
  fit.intercept_loglog = i1;
  fit.residual = e1;
  fit.beta = -s2;
  fit.intercept_semilog = i2;
  fit.residual_semilog = e2;
  return fit;
}

} // namespace cnfscope
