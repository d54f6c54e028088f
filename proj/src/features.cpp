#include "cnfscope/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cnfscope/community.hpp"
#include "cnfscope/graph.hpp"
#include "cnfscope/scalefree.hpp"

namespace cnfscope {

std::string_view feature_name(Feature f) {
  switch (f) {
  case Feature::alpha: return "alpha";
  case Feature::q: return "q";
  case Feature::d: return "d";
  case Feature::d_b: return "d_b";
  case Feature::ratio: return "ratio";
  case Feature::beta: return "beta";
  case Feature::beta_b: return "beta_b";
  case Feature::n: return "n";
  case Feature::m: return "m";
  case Feature::r_max: return "r_max";
  }
  return "?";
}

std::optional<Feature> parse_feature(std::string_view name) {
  for (Feature f : kAllFeatures)
    if (feature_name(f) == name)
      return f;
  return std::nullopt;
}

double FeatureVector::get(Feature f) const {
  switch (f) {
  case Feature::alpha: return alpha;
  case Feature::q: return q;
  case Feature::d: return d;
  case Feature::d_b: return d_b;
  case Feature::ratio: return ratio;
  case Feature::beta: return beta;
  case Feature::beta_b: return beta_b;
  case Feature::n: return static_cast<double>(n);
  case Feature::m: return static_cast<double>(m);
  case Feature::r_max:
    return r_max ? static_cast<double>(*r_max) : std::numeric_limits<double>::quiet_NaN();
  }
  return 0.0;
}

void FeatureVector::set(Feature f, double value) {
  switch (f) {
  case Feature::alpha: alpha = value; break;
  case Feature::q: q = value; break;
  case Feature::d: d = value; break;
  case Feature::d_b: d_b = value; break;
  case Feature::ratio: ratio = value; break;
  case Feature::beta: beta = value; break;
  case Feature::beta_b: beta_b = value; break;
  case Feature::n: n = static_cast<std::int64_t>(value); break;
  case Feature::m: m = static_cast<std::int64_t>(value); break;
  case Feature::r_max:
    if (std::isnan(value))
      r_max.reset();
    else
      r_max = static_cast<int>(value);
    break;
  }
}

CurveFit curve_and_fit(const Graph &g, const FeatureConfig &config) {
  CurveFit out;
  out.curve = cover_curve(g, std::nullopt, config.ordering);
  if (config.monotone_clamp)
    out.curve = out.curve.clamped();
  out.fit = fit_dimension(out.curve, config.fit_lo, config.fit_hi);
  return out;
}

FeatureVector extract_features(const CnfFormula &input, const FeatureConfig &config) {
  const CnfFormula f = canonicalize(input);
  validate(f);
  FeatureVector v;
  v.n = f.num_vars;
  v.m = static_cast<std::int64_t>(f.num_clauses());
  v.ratio = f.num_vars > 0 ? static_cast<double>(v.m) / static_cast<double>(v.n) : 0.0;

  const auto vig = curve_and_fit(build_vig(f, false), config);
  v.d = vig.fit.d;
  v.beta = vig.fit.beta;
  v.r_max = vig.curve.r_max;

  const auto cvig = curve_and_fit(build_cvig(f, false), config);
  v.d_b = cvig.fit.d;
  v.beta_b = cvig.fit.beta;

  v.alpha = fit_alpha(occurrence_histogram(f), config.max_discard).alpha;
  v.q = fold_communities(build_vig(f, true), config.seed, config.min_gain).q;
  return v;
}

std::size_t Normalization::active_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
}

std::vector<double> Normalization::apply(const FeatureVector &v) const {
  std::vector<double> out;
  out.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (!active[i])
      continue;
    const double x = (v.get(features[i]) - min[i]) / (max[i] - min[i]);
    out.push_back(std::clamp(x, 0.0, 1.0));
  }
  return out;
}

Normalization fit_normalization(const FeatureMatrix &matrix,
                                std::span<const std::size_t> training,
                                std::span<const Feature> features) {
  if (training.empty())
    throw std::invalid_argument("normalization needs at least one training row");
  Normalization norm;
  norm.features.assign(features.begin(), features.end());
  const std::size_t k = features.size();
  norm.min.assign(k, std::numeric_limits<double>::infinity());
  norm.max.assign(k, -std::numeric_limits<double>::infinity());
  norm.active.assign(k, true);
  for (std::size_t row : training) {
    const auto &v = matrix.rows.at(row).features;
    for (std::size_t i = 0; i < k; ++i) {
      const double x = v.get(features[i]);
      if (std::isnan(x))
        continue;
      norm.min[i] = std::min(norm.min[i], x);
      norm.max[i] = std::max(norm.max[i], x);
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    if (!(norm.min[i] < norm.max[i])) {
      norm.active[i] = false;
      norm.warnings.push_back("feature '" + std::string(feature_name(features[i])) +
                              "' is constant on the training rows; excluded from distances");
    }
  return norm;
}

NormalizedMatrix normalize(const FeatureMatrix &matrix,
                           std::span<const std::size_t> training,
                           std::span<const Feature> features) {
  NormalizedMatrix out;
  out.normalization = fit_normalization(matrix, training, features);
  out.points.reserve(matrix.rows.size());
  for (const auto &row : matrix.rows)
    out.points.push_back(out.normalization.apply(row.features));
  return out;
}

} // namespace cnfscope
