// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cnfscope/cnf.hpp"
#include "cnfscope/community.hpp"
#include "cnfscope/features.hpp"
#include "cnfscope/fractal.hpp"
#include "cnfscope/graph.hpp"
#include "cnfscope/io.hpp"
#include "cnfscope/portfolio.hpp"
#include "cnfscope/scalefree.hpp"
#include "oracles.hpp"

using namespace cnfscope;

namespace {

// Pinned tolerances.
constexpr int kTable1Vars = 100000;
constexpr int kTable1Seeds = 5;
struct Target {
  double ratio;
  double d, d_tol;
  double beta, beta_tol;   // NaN: not checked
  double d_b, d_b_tol;
  double beta_b, beta_b_tol;
};
const Target kTable1[] = {
    {1.0, 1.77, 0.2, NAN, 0, 1.58, 0.2, NAN, 0},
    {4.25, 5.76, 0.3, 2.39, 0.15, 3.03, 0.2, 1.23, 0.1},
    {10.0, 7.35, 0.4, NAN, 0, 3.93, 0.25, NAN, 0},
};
constexpr double kHalvingTol = 0.15;
constexpr int kCoverGraphs = 200;
constexpr std::size_t kCoverMaxNodes = 12;
constexpr int kColoringGraphs = 100;
constexpr std::size_t kColoringMaxNodes = 8;
constexpr int kSandwichFormulas = 100;
constexpr int kSandwichMax = 8;
constexpr int kRadiusGraphs = 50;
constexpr std::size_t kRadiusMaxNodes = 200;
constexpr double kAlphaTrue = 2.5;
constexpr std::size_t kAlphaSamples = 100000;
constexpr double kAlphaTol = 0.1;
constexpr double kTwoK5Q = 0.5;
constexpr double kQExactTol = 1e-12;
constexpr int kModularityGraphs = 100;
constexpr double kModularityFloor = 0.9;
constexpr int kEvolutionVars = 10000;
constexpr double kEvolutionRatio = 4.25;
constexpr int kPermutationSeeds = 50;
constexpr double kPermutationLo = 0.35, kPermutationHi = 0.65;
constexpr int kPortfolioMatrices = 50;
constexpr std::size_t kCorpusFamilyMin = 75;
constexpr std::size_t kCorpusSolvedLo = 68, kCorpusSolvedHi = 78;

int failures = 0;

void report(int id, const char *name, bool pass, const std::string &detail, double seconds) {
  std::printf("[%s] C%-2d %-34s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, name, detail.c_str(),
              seconds);
  std::fflush(stdout);
  if (!pass)
    ++failures;
}

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

FeatureConfig kConfig{};

// ---------------------------------------------------------------- 1, 2
struct FamilyMeans {
  double d = 0, beta = 0, d_b = 0, beta_b = 0;
};
std::vector<FamilyMeans> table1_means;

void criterion_table1() {
  Stopwatch sw;
  bool pass = true;
  std::string detail;
  for (const auto &t : kTable1) {
    FamilyMeans mean;
    const auto m = static_cast<std::size_t>(std::llround(t.ratio * kTable1Vars));
    for (int s = 1; s <= kTable1Seeds; ++s) {
      const auto f = random_3cnf(kTable1Vars, m, static_cast<std::uint64_t>(s));
      const auto vig = curve_and_fit(build_vig(f, false), kConfig).fit;
      const auto cvig = curve_and_fit(build_cvig(f, false), kConfig).fit;
      mean.d += vig.d / kTable1Seeds;
      mean.beta += vig.beta / kTable1Seeds;
      mean.d_b += cvig.d / kTable1Seeds;
      mean.beta_b += cvig.beta / kTable1Seeds;
    }
    table1_means.push_back(mean);
    auto within = [](double x, double target, double tol) {
      return std::isnan(target) || std::abs(x - target) <= tol;
    };
    pass &= within(mean.d, t.d, t.d_tol) && within(mean.beta, t.beta, t.beta_tol) &&
            within(mean.d_b, t.d_b, t.d_b_tol) && within(mean.beta_b, t.beta_b, t.beta_b_tol);
    detail += fmt("m/n=%g: d=%.3f b=%.3f d^b=%.3f b^b=%.3f; ", t.ratio, mean.d, mean.beta,
                  mean.d_b, mean.beta_b);
  }
  report(1, "random-formula dimensions", pass, detail, sw.seconds());
}

void criterion_halving() {
  Stopwatch sw;
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < table1_means.size(); ++i) {
    if (kTable1[i].ratio < 4.0)
      continue;
    const auto &m = table1_means[i];
    const double rel = std::abs(m.beta_b - m.beta / 2) / (m.beta / 2);
    pass &= rel <= kHalvingTol;
    detail += fmt("m/n=%g: |b^b-b/2|/(b/2)=%.3f; ", kTable1[i].ratio, rel);
  }
  report(2, "decay halving (tol 0.15)", pass, detail, sw.seconds());
}

// ---------------------------------------------------------------- 3
bool valid_cover(const Graph &g, const CoverResult &c, int r) {
  std::vector<bool> hit(g.node_count(), false);
  for (NodeId center : c.centers) {
    auto d = bfs_distances(g, center);
    for (std::size_t v = 0; v < d.size(); ++v)
      hit[v] = hit[v] || d[v] < r;
  }
  return c.count == c.centers.size() && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

void criterion_exact_cover() {
  Stopwatch sw;
  std::mt19937_64 rng(3);
  std::size_t checks = 0, bad_bound = 0, bad_cover = 0, bad_mono = 0, bad_oracle = 0;
  for (int it = 0; it < kCoverGraphs; ++it) {
    const std::size_t n = 2 + rng() % (kCoverMaxNodes - 1);
    const double p = 0.15 + 0.1 * static_cast<double>(it % 5);
    auto g = oracle::random_graph(n, p, rng, true);
    std::size_t prev = n + 1;
    for (int r = 1; r <= static_cast<int>(n) + 1; ++r) {
      const auto exact = exact_cover_count(g, r);
      const auto greedy = greedy_cover(g, r);
      ++checks;
      bad_bound += greedy.count < exact;
      bad_cover += !valid_cover(g, greedy, r);
      bad_mono += exact > prev;
      bad_oracle += exact != oracle::min_circle_cover(g, r);
      prev = exact;
      if (exact == 1)
        break;
    }
  }
  const bool pass = bad_bound + bad_cover + bad_mono + bad_oracle == 0;
  report(3, "exact-cover oracle suite", pass,
         fmt("%d graphs, %zu (g,r) checks; greedy<exact %zu, invalid covers %zu, "
             "exact increases %zu, exact!=brute force %zu",
             kCoverGraphs, checks, bad_bound, bad_cover, bad_mono, bad_oracle),
         sw.seconds());
}

// ---------------------------------------------------------------- 4
void criterion_coloring() {
  Stopwatch sw;
  std::mt19937_64 rng(4);
  int mismatches = 0;
  for (int it = 0; it < kColoringGraphs; ++it) {
    const std::size_t n = 1 + rng() % kColoringMaxNodes;
    const double p = 0.2 + 0.15 * static_cast<double>(it % 5);
    auto g = oracle::random_graph(n, p, rng, false);
    mismatches += exact_box_cover_count(complement(g), 2) != oracle::chromatic_number(g);
  }
  report(4, "coloring reduction", mismatches == 0,
         fmt("%d graphs <= %zu nodes, mismatches %d", kColoringGraphs, kColoringMaxNodes,
             mismatches),
         sw.seconds());
}

// ---------------------------------------------------------------- 5
CnfFormula small_formula(std::mt19937_64 &rng) {
  CnfFormula f;
  f.num_vars = 1 + static_cast<int>(rng() % kSandwichMax);
  const int m = 1 + static_cast<int>(rng() % kSandwichMax);
  std::uniform_int_distribution<int> var(1, f.num_vars);
  for (int c = 0; c < m; ++c) {
    Clause cl;
    const int len = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < len; ++k)
      cl.push_back(var(rng) * (rng() % 2 ? 1 : -1));
    normalize_clause(cl);
    f.clauses.push_back(cl);
  }
  return f;
}

void criterion_sandwich() {
  Stopwatch sw;
  std::mt19937_64 rng(5);
  std::size_t checks = 0, violations = 0;
  for (int it = 0; it < kSandwichFormulas; ++it) {
    const auto f = small_formula(rng);
    const auto vig = build_vig(f, false);
    const auto cvig = build_cvig(f, false);
    const int r_top = static_cast<int>(vig.node_count()) + 1;
    for (int r = 2; r <= r_top; ++r) {
      const auto n = exact_cover_count(vig, r);
      const auto nb_lo = exact_cover_count(cvig, 2 * r);
      const auto nb_hi = exact_cover_count(cvig, 2 * r - 2);
      ++checks;
      violations += !(nb_lo <= n && n <= nb_hi);
    }
  }
  report(5, "sandwich N^b(2r)<=N(r)<=N^b(2r-2)", violations == 0,
         fmt("%d formulas <= %d vars/clauses, %zu (f,r) checks, violations %zu",
             kSandwichFormulas, kSandwichMax, checks, violations),
         sw.seconds());
}

// ---------------------------------------------------------------- 6
void criterion_radius() {
  Stopwatch sw;
  std::mt19937_64 rng(6);
  int violations = 0, cover_mismatch = 0;
  for (int it = 0; it < kRadiusGraphs; ++it) {
    const std::size_t n = 2 + rng() % (kRadiusMaxNodes - 1);
    const double p = std::min(1.0, (1.0 + static_cast<double>(it % 4)) / static_cast<double>(n));
    auto g = oracle::random_graph(n, p, rng, true);
    const int r_max = *exact_max_radius(g);
    const int d_max = exact_diameter(g);
    violations += !(r_max <= d_max + 1 && d_max <= 2 * (r_max - 1) + 1);
    if (n <= kExactCoverLimit)
      cover_mismatch += exact_cover_count(g, r_max) != 1 ||
                        (r_max > 1 && exact_cover_count(g, r_max - 1) == 1);
  }
  report(6, "radius/diameter relation", violations + cover_mismatch == 0,
         fmt("%d connected graphs <= %zu nodes; r^max<=d^max+1, d^max<=2(r^max-1)+1 "
             "violations %d, r^max vs exact cover mismatches %d",
             kRadiusGraphs, kRadiusMaxNodes, violations, cover_mismatch),
         sw.seconds());
}

// ---------------------------------------------------------------- 7
void criterion_alpha() {
  Stopwatch sw;
  std::mt19937_64 rng(7);
  const auto sample = oracle::power_law_sample(kAlphaTrue, 1, kAlphaSamples, 10000000, rng);
  const auto h = histogram_from_counts(sample);
  const auto fit = fit_alpha(h);
  const bool recovered = std::abs(fit.alpha - kAlphaTrue) <= kAlphaTol;

  bool degenerate = false;
  try {
    fit_alpha(histogram_from_counts(std::vector<std::uint64_t>(1000, 3)));
  } catch (const std::invalid_argument &) {
    degenerate = true;
  }

  bool invariant = true;
  for (std::uint64_t c : {2u, 5u, 17u}) {
    auto scaled = h;
    for (auto &e : scaled.entries)
      e.f *= c;
    const auto s = fit_alpha(scaled);
    invariant &= std::abs(s.alpha - fit.alpha) <= 1e-9 && s.k_min == fit.k_min;
  }
  report(7, "alpha recovery", recovered && degenerate && invariant,
         fmt("alpha=%.4f (true %.1f, tol %.1f, k_min=%llu, t=%d); degenerate rejected %s; "
             "scale invariant %s",
             fit.alpha, kAlphaTrue, kAlphaTol, static_cast<unsigned long long>(fit.k_min),
             fit.discarded, degenerate ? "yes" : "no", invariant ? "yes" : "no"),
         sw.seconds());
}

// ---------------------------------------------------------------- 8
void criterion_modularity() {
  Stopwatch sw;
  GraphBuilder b(10, NodeKind::variable);
  for (NodeId base : {0u, 5u})
    for (NodeId u = base; u < base + 5; ++u)
      for (NodeId v = u + 1; v < base + 5; ++v)
        b.add_edge(u, v);
  const auto k5 = fold_communities(std::move(b).build(), 42);
  bool components = k5.partition.community_count == 2;
  for (NodeId u = 0; u < 10; ++u)
    components &= k5.partition.assignment[u] == k5.partition.assignment[u < 5 ? 0 : 5];
  const bool two_k5 = std::abs(k5.q - kTwoK5Q) <= kQExactTol && components;

  std::mt19937_64 rng(8);
  int below = 0;
  double worst = 1.0;
  for (int it = 0; it < kModularityGraphs; ++it) {
    const std::size_t n = 2 + rng() % 7;
    const double p = 0.2 + 0.1 * static_cast<double>(it % 5);
    auto g = oracle::random_graph(n, p, rng, true);
    const double best = oracle::max_modularity(g);
    const double q = fold_communities(g, 42).q;
    if (best > 1e-12)
      worst = std::min(worst, q / best);
    below += q < kModularityFloor * best - 1e-12;
  }
  report(8, "modularity", two_k5 && below == 0,
         fmt("two K5: Q=%.15f, component partition %s; %d graphs <= 8 nodes: below 0.9*opt %d, "
             "worst Q/opt %.3f",
             k5.q, components ? "yes" : "no", kModularityGraphs, below, worst),
         sw.seconds());
}

// ---------------------------------------------------------------- 9
void criterion_predictor() {
  Stopwatch sw;
  const double worked = predict_runtime(std::vector<double>{1, 2}, std::vector<double>{10, 20});
  const double exact = predict_runtime(std::vector<double>{0.5, 0, 3}, std::vector<double>{1, 7, 100});
  const double single = predict_runtime(std::vector<double>{2.75}, std::vector<double>{33.5});
  const bool pass = worked == 12.0 && exact == 7.0 && single == 33.5;
  report(9, "runtime predictor arithmetic", pass,
         fmt("worked example %.17g (12.0), zero distance %.17g (7.0), single neighbour %.17g "
             "(33.5)",
             worked, exact, single),
         sw.seconds());
}

// ---------------------------------------------------------------- 10
// Synthetic learnt clauses: resolvents of random clause pairs, so the trace
// stays implied by the formula like a real solver's.
std::vector<Clause> resolvents(const CnfFormula &f, std::size_t count, std::mt19937_64 &rng) {
  std::vector<std::vector<std::size_t>> occurs(2 * static_cast<std::size_t>(f.num_vars) + 2);
  auto slot = [](Literal l) { return 2 * static_cast<std::size_t>(var_of(l)) + (l < 0); };
  for (std::size_t c = 0; c < f.clauses.size(); ++c)
    for (Literal l : f.clauses[c])
      occurs[slot(l)].push_back(c);
  std::vector<Clause> out;
  std::uniform_int_distribution<std::size_t> pick(0, f.clauses.size() - 1);
  while (out.size() < count) {
    const auto &c = f.clauses[pick(rng)];
    const Literal l = c[rng() % c.size()];
    const auto &partners = occurs[slot(-l)];
    if (partners.empty())
      continue;
    const auto &d = f.clauses[partners[rng() % partners.size()]];
    Clause r;
    for (Literal x : c)
      if (x != l)
        r.push_back(x);
    for (Literal x : d)
      if (x != -l)
        r.push_back(x);
    if (normalize_clause(r) || r.size() < 2)
      continue;
    out.push_back(r);
  }
  return out;
}

std::pair<double, double> dims(const PropagationResult &p) {
  const auto f = drop_assigned(p.formula, p.assignment);
  return {curve_and_fit(build_vig(f, false), kConfig).fit.d,
          curve_and_fit(build_cvig(f, false), kConfig).fit.d};
}

void criterion_evolution() {
  Stopwatch sw;
  const auto m = static_cast<std::size_t>(std::llround(kEvolutionRatio * kEvolutionVars));
  const auto f = random_3cnf(kEvolutionVars, m, 10);
  std::mt19937_64 rng(10);
  ClauseTrace trace;
  std::vector<Clause> learnt;
  for (std::int64_t decisions : {100, 1000, 10000, 100000}) {
    auto more = resolvents(f, static_cast<std::size_t>(decisions / 10), rng);
    learnt.insert(learnt.end(), more.begin(), more.end());
    trace.checkpoints.push_back({decisions, learnt});
  }
  const std::int64_t deepest = trace.checkpoints.back().decisions;
  const auto [d0, db0] = dims(unit_propagate(f));
  const auto aug = augment_with_learnt(f, trace, deepest);
  const auto rnd = random_replacement(f, trace, deepest, 10);
  bool pass = aug.ok() && rnd.ok();
  std::string detail = fmt("n=%d m=%zu, %zu clauses at %lld decisions; original d=%.3f d^b=%.3f",
                           kEvolutionVars, m, trace.checkpoints.back().learnt.size(),
                           static_cast<long long>(deepest), d0, db0);
  if (pass) {
    const auto [da, dba] = dims(aug);
    const auto [dr, dbr] = dims(rnd);
    pass = da > d0 && dba > db0 && dr > d0 && dbr > db0;
    detail += fmt("; learnt d=%.3f d^b=%.3f; random d=%.3f d^b=%.3f", da, dba, dr, dbr);
  } else {
    detail += "; augmented formula UNSAT at level 0";
  }
  report(10, "dimension evolution", pass, detail, sw.seconds());
}

// ---------------------------------------------------------------- 11
FeatureRow make_row(const std::string &id, const std::string &family, std::vector<double> x) {
  FeatureRow row;
  row.instance = id;
  row.family = family;
  for (std::size_t i = 0; i < x.size(); ++i)
    row.features.set(kDefaultFeatures[i], x[i]);
  return row;
}

void criterion_learning() {
  Stopwatch sw;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // Perfect split on d_b at 3.0, noise elsewhere.
  FeatureMatrix split;
  for (int i = 0; i < 40; ++i) {
    const bool hi = i % 2;
    split.rows.push_back(make_row(fmt("s%02d", i), hi ? "high" : "low",
                                  {u(rng), u(rng), u(rng), hi ? 3.5 + u(rng) : 2.5 - u(rng), u(rng)}));
  }
  const double split_acc = loo_classify(split, kDefaultFeatures).accuracy();

  // Random labels on symmetric features.
  double perm_sum = 0.0;
  for (int s = 0; s < kPermutationSeeds; ++s) {
    std::mt19937_64 r(1000 + s);
    std::uniform_real_distribution<double> x(0.0, 1.0);
    FeatureMatrix perm;
    for (int i = 0; i < 40; ++i)
      perm.rows.push_back(make_row(fmt("p%02d", i), r() % 2 ? "A" : "B",
                                   {x(r), x(r), x(r), x(r), x(r)}));
    perm_sum += loo_classify(perm, kDefaultFeatures).accuracy();
  }
  const double perm_mean = perm_sum / kPermutationSeeds;

  // solved <= VBS on random runtime matrices, exact dominant-solver recovery.
  std::size_t over_vbs = 0, dominant_misses = 0;
  for (int s = 0; s < kPortfolioMatrices; ++s) {
    std::mt19937_64 r(2000 + s);
    std::uniform_real_distribution<double> x(0.0, 1.0), t(1.0, 900.0);
    FeatureMatrix fm;
    RuntimeMatrix times;
    times.solvers = {"s0", "s1", "s2", "s3"};
    for (int i = 0; i < 30; ++i) {
      const auto id = fmt("i%02d", i);
      fm.rows.push_back(make_row(id, "f", {x(r), x(r), x(r), x(r), x(r)}));
      times.instances.push_back(id);
      std::vector<std::optional<double>> row;
      for (int k = 0; k < 4; ++k)
        row.push_back(x(r) < 0.3 ? std::nullopt : std::optional<double>(t(r)));
      times.times.push_back(row);
    }
    const auto rep = loo_portfolio_sim(fm, times);
    over_vbs += rep.solved > rep.vbs_solved;

    // s2 becomes ten times faster than anything else everywhere
    for (auto &row : times.times)
      row[2] = 0.1;
    const auto dom = loo_portfolio_sim(fm, times);
    for (const auto &o : dom.per_instance)
      dominant_misses += o.chosen != "s2";
    dominant_misses += dom.solved != dom.vbs_solved;
  }

  bool pass = split_acc == 1.0 && perm_mean >= kPermutationLo && perm_mean <= kPermutationHi &&
              over_vbs == 0 && dominant_misses == 0;
  std::string detail =
      fmt("perfect split %.3f; random labels mean %.3f over %d seeds (band %.2f-%.2f); "
          "solved>VBS %zu/%d; dominant misses %zu",
          split_acc, perm_mean, kPermutationSeeds, kPermutationLo, kPermutationHi, over_vbs,
          kPortfolioMatrices, dominant_misses);

  // Optional corpus check.
  const char *feat = std::getenv("CNFSCOPE_CORPUS_FEATURES");
  const char *rt = std::getenv("CNFSCOPE_CORPUS_RUNTIMES");
  if (feat && rt) {
    std::ifstream fin(feat), rin(rt);
    const auto table = read_feature_csv(fin);
    const auto times = read_runtime_csv(rin, 900.0);
    const std::array subset{Feature::d_b, Feature::alpha, Feature::ratio};
    const auto cls = loo_classify(table.matrix, subset);
    const auto sim = loo_portfolio_sim(table.matrix, times);
    pass &= cls.correct >= kCorpusFamilyMin && sim.solved >= kCorpusSolvedLo &&
            sim.solved <= kCorpusSolvedHi;
    detail += fmt("; corpus: families %zu/%zu, solved %zu", cls.correct, cls.total, sim.solved);
  } else {
    detail += "; corpus check not run (CNFSCOPE_CORPUS_FEATURES/RUNTIMES unset)";
  }
  report(11, "classification/portfolio", pass, detail, sw.seconds());
}

} // namespace

int main() {
  Stopwatch total;
  criterion_table1();
  criterion_halving();
  criterion_exact_cover();
  criterion_coloring();
  criterion_sandwich();
  criterion_radius();
  criterion_alpha();
  criterion_modularity();
  criterion_predictor();
  criterion_evolution();
  criterion_learning();
  std::printf("%s: %d criteria failed (%.1fs)\n", failures ? "FAIL" : "PASS", failures,
              total.seconds());
  return failures ? 1 : 0;
}
