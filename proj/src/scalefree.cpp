#include "cnfscope/scalefree.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace cnfscope {

std::uint64_t OccurrenceHistogram::sample_size() const {
  std::uint64_t s = 0;
  for (const auto &e : entries)
    s += e.f;
  return s;
}

OccurrenceHistogram histogram_from_counts(const std::vector<std::uint64_t> &counts) {
  std::map<std::uint64_t, std::uint64_t> freq;
  for (auto k : counts)
    if (k > 0)
      ++freq[k];
  OccurrenceHistogram h;
  h.total_vars = counts.size();
  for (auto [k, f] : freq)
    h.entries.push_back({k, f});
  return h;
}

OccurrenceHistogram occurrence_histogram(const CnfFormula &f) {
  validate(f);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(f.num_vars), 0);
  std::vector<std::size_t> last_clause(static_cast<std::size_t>(f.num_vars),
                                       static_cast<std::size_t>(-1));
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci)
    for (Literal lit : f.clauses[ci]) {
      const auto v = static_cast<std::size_t>(var_of(lit) - 1);
      if (last_clause[v] == ci)
        continue;
      last_clause[v] = ci;
      ++counts[v];
    }
  return histogram_from_counts(counts);
}

AlphaFit fit_alpha(const OccurrenceHistogram &h, int max_discard) {
  const auto &es = h.entries;
  bool found = false;
  AlphaFit best;
  for (int t = 0; t <= max_discard && static_cast<std::size_t>(t) + 2 <= es.size(); ++t) {
    const double k_min = static_cast<double>(es[t].k);
    double sample = 0, log_sum = 0;
    for (std::size_t i = t; i < es.size(); ++i) {
      const double f = static_cast<double>(es[i].f);
      sample += f;
      log_sum += f * std::log(static_cast<double>(es[i].k) / (k_min - 0.5));
    }
    const double alpha = 1.0 + sample / log_sum;

    double error = 0, at_least = sample;
    for (std::size_t i = t; i < es.size(); ++i) {
      const double empirical = at_least / sample;
      const double model = std::pow(static_cast<double>(es[i].k) / k_min, -(alpha - 1.0));
      error = std::max(error, std::abs(empirical - model));
      at_least -= static_cast<double>(es[i].f);
    }

    if (!found || error < best.ks_error) {
      best = {alpha, es[t].k, t, error};
      found = true;
    }
  }
  if (!found)
    throw std::invalid_argument(
        "degenerate occurrence distribution: fewer than two distinct counts");
  return best;
}

} // namespace cnfscope
