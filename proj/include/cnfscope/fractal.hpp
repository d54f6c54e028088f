#pragma once

#include <optional>
#include <vector>

#include "cnfscope/graph.hpp"

namespace cnfscope {

/// Order in which the burning algorithm visits candidate centers. Ties are
/// always broken by ascending node id.
enum class CenterOrdering { desc_degree, asc_degree };

std::vector<NodeId> center_order(const Graph &g, CenterOrdering ordering);

struct CoverResult {
  std::size_t count = 0;
  std::vector<NodeId> centers;
};

/// Greedy burning approximation of N(r). A circle of radius r around c holds
/// the nodes at hop distance < r from c. Nodes are visited in `ordering`; a
/// circle is selected when its center is still unburned.
CoverResult greedy_cover(const Graph &g, int r,
                         CenterOrdering ordering = CenterOrdering::desc_degree);

/// Exact minimum number of radius-r circles covering g. Exponential; limited
/// to kExactCoverLimit nodes.
std::size_t exact_cover_count(const Graph &g, int r);
inline constexpr std::size_t kExactCoverLimit = 20;

/// Exact minimum number of boxes of size l (node sets with all pairwise
/// distances < l) covering g. Limited to kExactBoxLimit nodes.
std::size_t exact_box_cover_count(const Graph &g, int l);
inline constexpr std::size_t kExactBoxLimit = 16;

/// Smallest radius for which a single circle covers the graph, i.e. one
/// more than the minimum eccentricity. Only meaningful for connected graphs;
/// returns nullopt otherwise.
std::optional<int> exact_max_radius(const Graph &g);

/// N(r) for r = 1, 2, ... as produced by the greedy burning algorithm.
struct CoverCurve {
  /// counts[i] = N(i + 1)
  std::vector<std::size_t> counts;
  /// Smallest r with N(r) = 1, when reached.
  std::optional<int> r_max;
  /// Number of radii where the raw greedy count increased.
  std::size_t monotone_violations = 0;

  int r_stop() const { return static_cast<int>(counts.size()); }
  std::size_t at(int r) const { return counts.at(static_cast<std::size_t>(r - 1)); }
  double normalized(int r) const;
  /// Running minimum of the counts.
  CoverCurve clamped() const;
};

/// Runs greedy_cover for r = 1, 2, ... until N(r) = 1, r reaches `r_stop`,
/// or every connected component is covered by a single circle.
CoverCurve cover_curve(const Graph &g, std::optional<int> r_stop = std::nullopt,
                       CenterOrdering ordering = CenterOrdering::desc_degree);

struct DimensionFit {
  /// -slope of log N(r) against log r.
  double d = 0.0;
  /// -slope of log N(r) against r.
  double beta = 0.0;
  int r_lo = 1;
  int r_hi = 1;
  /// Max |log N(r) - model| over the window, for each fit.
  double residual = 0.0;
  double residual_semilog = 0.0;
  /// log C for N(r) = C r^-d and N(r) = C e^-beta r.
  double intercept_loglog = 0.0;
  double intercept_semilog = 0.0;
};

/// Least-squares fits over r in [r_lo, min(r_hi, r_stop)]. Throws
/// std::invalid_argument with fewer than two points in the window.
DimensionFit fit_dimension(const CoverCurve &curve, int r_lo = 1, int r_hi = 5);

} // namespace cnfscope
