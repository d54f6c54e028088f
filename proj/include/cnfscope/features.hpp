#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cnfscope/cnf.hpp"
#include "cnfscope/fractal.hpp"

namespace cnfscope {

enum class Feature { alpha, q, d, d_b, ratio, beta, beta_b, n, m, r_max };

inline constexpr std::array kAllFeatures{
    Feature::alpha, Feature::q,      Feature::d,      Feature::d_b, Feature::ratio,
    Feature::beta,  Feature::beta_b, Feature::n,      Feature::m,   Feature::r_max};

/// The five features used for classification and solver selection.
inline constexpr std::array kDefaultFeatures{Feature::alpha, Feature::q, Feature::d,
                                             Feature::d_b, Feature::ratio};

std::string_view feature_name(Feature f);
/// Accepts the CSV column names (`alpha`, `q`, `d`, `d_b`, `ratio`, ...).
std::optional<Feature> parse_feature(std::string_view name);

struct FeatureVector {
  double alpha = 0.0;
  double q = 0.0;
  double d = 0.0;   // VIG pseudo-dimension
  double d_b = 0.0; // CVIG pseudo-dimension
  double ratio = 0.0;
  // extras
  double beta = 0.0;
  double beta_b = 0.0;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::optional<int> r_max;

  /// NaN for an absent r_max.
  double get(Feature f) const;
  void set(Feature f, double value);

  bool operator==(const FeatureVector &) const = default;
};

struct FeatureConfig {
  std::uint64_t seed = 42;
  CenterOrdering ordering = CenterOrdering::desc_degree;
  int fit_lo = 1;
  int fit_hi = 5;
  bool monotone_clamp = false;
  double min_gain = 1e-6;
  int max_discard = 5;
};

/// Fractal fits on the unweighted VIG and CVIG, alpha on the occurrence
/// histogram, Q by folding on the weighted VIG. The formula is canonicalized
/// first so clause order does not matter.
FeatureVector extract_features(const CnfFormula &f, const FeatureConfig &config = {});

/// Cover curve and fit for one graph, honouring the clamp flag.
struct CurveFit {
  CoverCurve curve;
  DimensionFit fit;
};
CurveFit curve_and_fit(const Graph &g, const FeatureConfig &config);

struct FeatureRow {
  std::string instance;
  std::optional<std::string> family;
  FeatureVector features;
};

struct FeatureMatrix {
  std::vector<FeatureRow> rows;
};

/// Per-feature min-max scaling captured from a training subset.
struct Normalization {
  std::vector<Feature> features;
  std::vector<double> min, max;
  /// Features constant on the training rows are left out of distances.
  std::vector<bool> active;
  std::vector<std::string> warnings;

  /// Scaled values of the active features, clamped to [0, 1].
  std::vector<double> apply(const FeatureVector &v) const;
  std::size_t active_count() const;
};

Normalization fit_normalization(const FeatureMatrix &matrix,
                                std::span<const std::size_t> training,
                                std::span<const Feature> features);

/// Scaled points for every row, using min-max bounds from `training`.
struct NormalizedMatrix {
  Normalization normalization;
  std::vector<std::vector<double>> points;
};
NormalizedMatrix normalize(const FeatureMatrix &matrix,
                           std::span<const std::size_t> training,
                           std::span<const Feature> features);

} // namespace cnfscope
