#include "doctest.h"

#include <cmath>
#include <random>

#include "cnfscope/scalefree.hpp"
#include "oracles.hpp"

using namespace cnfscope;

using Entries = std::vector<OccurrenceHistogram::Entry>;

TEST_CASE("occurrence histogram examples") {
  auto h = occurrence_histogram(CnfFormula{3, {{1, 2}, {1, 3}}});
  CHECK(h.entries == Entries{{1, 2}, {2, 1}});
  CHECK(h.sample_size() == 3);

  CHECK(occurrence_histogram(CnfFormula{1, {{1}, {1}, {1}}}).entries == Entries{{3, 1}});

  auto unused = occurrence_histogram(CnfFormula{5, {{1, 2}, {3, -4}}});
  CHECK(unused.entries == Entries{{1, 4}});
  CHECK(unused.total_vars == 5);
}

TEST_CASE("polarities count together, repeats inside a clause once") {
  auto h = occurrence_histogram(CnfFormula{2, {{1, -1, 2}, {-1}}});
  CHECK(h.entries == Entries{{1, 1}, {2, 1}});
}

TEST_CASE("histogram from counts ignores zeros") {
  auto h = histogram_from_counts({0, 2, 2, 5, 0, 1});
  CHECK(h.entries == Entries{{1, 1}, {2, 2}, {5, 1}});
}

TEST_CASE("alpha recovery from an exact power-law sample") {
  std::mt19937_64 rng(7);
  auto sample = oracle::power_law_sample(2.5, 1, 100000, 1000000, rng);
  auto fit = fit_alpha(histogram_from_counts(sample));
  CHECK(fit.alpha >= 2.4);
  CHECK(fit.alpha <= 2.6);
  CHECK(fit.ks_error >= 0.0);
  CHECK(fit.ks_error <= 1.0);
  CHECK(fit.discarded <= 5);
}

TEST_CASE("alpha on a hand-sized histogram") {
  OccurrenceHistogram h;
  h.entries = {{1, 8}, {2, 4}};
  auto fit = fit_alpha(h, 0);
  // 1 + 12 / (8 ln 2 + 4 ln 4)
  CHECK(fit.alpha == doctest::Approx(1.0 + 12.0 / (16.0 * std::log(2.0))));
  CHECK(fit.k_min == 1);
  const double model = std::pow(2.0, -(fit.alpha - 1.0));
  CHECK(fit.ks_error == doctest::Approx(std::abs(4.0 / 12.0 - model)));
}

TEST_CASE("degenerate tail") {
  CHECK_THROWS_AS(fit_alpha(occurrence_histogram(CnfFormula{2, {{1, 2}, {1, 2}, {-1, 2}}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_alpha(OccurrenceHistogram{}), std::invalid_argument);
}

TEST_CASE("scale invariance and discard monotonicity") {
  std::mt19937_64 rng(13);
  auto sample = oracle::power_law_sample(2.2, 1, 5000, 10000, rng);
  auto h = histogram_from_counts(sample);
  auto base = fit_alpha(h);
  for (std::uint64_t c : {2u, 3u, 10u}) {
    auto scaled = h;
    for (auto &e : scaled.entries)
      e.f *= c;
    auto fit = fit_alpha(scaled);
    CHECK(fit.alpha == doctest::Approx(base.alpha).epsilon(1e-9));
    CHECK(fit.k_min == base.k_min);
  }
  double prev = 2.0;
  for (int t = 0; t <= 5; ++t) {
    auto fit = fit_alpha(h, t);
    CHECK(fit.ks_error <= prev + 1e-15);
    prev = fit.ks_error;
  }
}
