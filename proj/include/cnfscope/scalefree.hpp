#pragma once

#include <cstdint>
#include <vector>

#include "cnfscope/cnf.hpp"

namespace cnfscope {

/// f(k): number of variables with exactly k occurrences, for k >= 1.
struct OccurrenceHistogram {
  struct Entry {
    std::uint64_t k;
    std::uint64_t f;
    bool operator==(const Entry &) const = default;
  };
  std::vector<Entry> entries; // strictly increasing k
  std::uint64_t total_vars = 0;

  std::uint64_t sample_size() const;
};

/// Counts occurrences of every variable, both polarities together. A
/// variable repeated inside one clause counts once.
OccurrenceHistogram occurrence_histogram(const CnfFormula &f);

/// Builds a histogram from raw occurrence counts (zeros are ignored).
OccurrenceHistogram histogram_from_counts(const std::vector<std::uint64_t> &counts);

struct AlphaFit {
  double alpha = 0.0;
  std::uint64_t k_min = 1;
  int discarded = 0;
  double ks_error = 0.0;
};

/// Power-law exponent of the occurrence tail.
///
/// For every t in 0..max_discard the t smallest distinct k are dropped,
/// k_min becomes the next one, and alpha is estimated by the discrete
/// maximum-likelihood approximation
///   alpha = 1 + S / sum_i ln(k_i / (k_min - 1/2))
/// over the S retained variables. Each candidate is scored by the largest
/// gap between the empirical tail CCDF and (k / k_min)^-(alpha-1); the
/// smallest score wins, ties going to fewer discards.
///
/// Throws std::invalid_argument when no candidate has two distinct k values.
AlphaFit fit_alpha(const OccurrenceHistogram &h, int max_discard = 5);

} // namespace cnfscope
