#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "cnfscope/graph.hpp"
#include "oracles.hpp"

using namespace cnfscope;

namespace {

Graph path(std::size_t n) {
  GraphBuilder b(n, NodeKind::variable);
  for (std::size_t i = 0; i + 1 < n; ++i)
    b.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return std::move(b).build();
}

Graph clique(std::size_t n) {
  GraphBuilder b(n, NodeKind::variable);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      b.add_edge(u, v);
  return std::move(b).build();
}

double weight(const Graph &g, NodeId u, NodeId v) {
  auto nb = g.neighbors(u);
  for (std::size_t i = 0; i < nb.size(); ++i)
    if (nb[i] == v)
      return g.weights(u)[i];
  return 0.0;
}

} // namespace

TEST_CASE("builder merges parallel edges and drops loops") {
  GraphBuilder b(3, NodeKind::variable);
  b.add_edge(0, 1, 0.5);
  b.add_edge(1, 0, 0.25);
  b.add_edge(2, 2, 1.0);
  b.add_edge(2, 0, 1.0);
  auto g = std::move(b).build();
  CHECK(g.edge_count() == 2);
  CHECK(weight(g, 0, 1) == doctest::Approx(0.75));
  CHECK(weight(g, 1, 0) == doctest::Approx(0.75));
  CHECK(g.has_edge(0, 2));
  CHECK_FALSE(g.has_edge(2, 2));
  CHECK(g.neighbors(0)[0] == 1);
  CHECK(g.neighbors(0)[1] == 2);
  CHECK(g.strength(0) == doctest::Approx(1.75));
  CHECK(g.total_weight() == doctest::Approx(1.75));
}

TEST_CASE("vig examples") {
  auto g = build_vig(CnfFormula{3, {{1, 2, -3}}}, true);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(weight(g, 0, 1) == doctest::Approx(1.0 / 3));
  CHECK(weight(g, 1, 2) == doctest::Approx(1.0 / 3));

  auto two = build_vig(CnfFormula{2, {{1, 2}, {1, 2}}}, true);
  CHECK(two.edge_count() == 1);
  CHECK(weight(two, 0, 1) == doctest::Approx(2.0));
  CHECK(weight(build_vig(CnfFormula{2, {{1, 2}, {1, 2}}}, false), 0, 1) == 1.0);

  auto iso = build_vig(CnfFormula{1, {{1}}}, true);
  CHECK(iso.node_count() == 1);
  CHECK(iso.edge_count() == 0);
}

TEST_CASE("vig of a tautology uses distinct variables") {
  auto g = build_vig(CnfFormula{3, {{1, -1, 2}}}, true);
  CHECK(g.edge_count() == 1);
  CHECK(g.total_weight() == doctest::Approx(1.0));
}

TEST_CASE("cvig examples") {
  auto g = build_cvig(CnfFormula{3, {{1, 2, -3}}}, true);
  CHECK(g.node_count() == 4);
  CHECK(g.degree(3) == 3);
  CHECK(g.kind(3) == NodeKind::clause);
  CHECK(g.kind(0) == NodeKind::variable);
  CHECK(weight(g, 3, 2) == doctest::Approx(1.0 / 3));

  auto u = build_cvig(CnfFormula{1, {{1}, {1}}}, true);
  CHECK(u.degree(0) == 2);
  CHECK(weight(u, 0, 1) == 1.0);
  CHECK(weight(u, 0, 2) == 1.0);
}

TEST_CASE("cig examples") {
  CHECK(build_cig(CnfFormula{3, {{1, 2}, {-1, 3}}}).edge_count() == 1);
  CHECK(build_cig(CnfFormula{3, {{1, 2}, {1, 3}}}).edge_count() == 0);
  auto g = build_cig(CnfFormula{2, {{1}, {-1}, {2}}});
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.kind(0) == NodeKind::clause);
}

TEST_CASE("weight totals, edge counts and bipartiteness on random formulas") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 40; ++it) {
    CnfFormula f;
    f.num_vars = 6;
    std::uniform_int_distribution<int> len(1, 4), var(1, 6), sign(0, 1);
    std::size_t multi = 0, occurrences = 0;
    for (int c = 0; c < 8; ++c) {
      Clause cl;
      for (int k = len(rng); k > 0; --k)
        cl.push_back(var(rng) * (sign(rng) ? 1 : -1));
      normalize_clause(cl);
      std::set<int> vars;
      for (auto l : cl)
        vars.insert(var_of(l));
      multi += vars.size() >= 2;
      occurrences += vars.size();
      f.clauses.push_back(cl);
    }
    CHECK(build_vig(f, true).total_weight() == doctest::Approx(static_cast<double>(multi)));
    auto cvig = build_cvig(f, true);
    CHECK(cvig.total_weight() == doctest::Approx(8.0));
    CHECK(build_cvig(f, false).edge_count() == occurrences);
    CHECK(is_bipartite(cvig));

    // every VIG edge is a 2-hop CVIG path
    auto vig = build_vig(f, false);
    auto cv = build_cvig(f, false);
    for (NodeId s = 0; s < 6; ++s) {
      auto dv = bfs_distances(vig, s);
      auto dc = bfs_distances(cv, s);
      for (NodeId t = 0; t < 6; ++t) {
        if (dv[t] == kUnreachable) {
          CHECK(dc[t] == kUnreachable);
          continue;
        }
        CHECK(dc[t] % 2 == 0);
        CHECK(dc[t] / 2 <= dv[t]);
        CHECK(dc[t] == 2 * dv[t]);
      }
    }
  }
}

TEST_CASE("bfs distances") {
  auto p = path(3);
  CHECK(bfs_distances(p, 0) == std::vector<int>{0, 1, 2});
  auto capped = bfs_distances(path(4), 0, 1);
  CHECK(capped == std::vector<int>{0, 1, kUnreachable, kUnreachable});
  GraphBuilder b(3, NodeKind::variable);
  b.add_edge(1, 2);
  auto g = std::move(b).build();
  CHECK(bfs_distances(g, 0) == std::vector<int>{0, kUnreachable, kUnreachable});
  CHECK_THROWS(bfs_distances(g, 3));
}

TEST_CASE("components and bipartite") {
  GraphBuilder b(5, NodeKind::variable);
  b.add_edge(0, 1);
  b.add_edge(2, 3);
  auto g = std::move(b).build();
  std::size_t count = 0;
  auto comp = connected_components(g, &count);
  CHECK(count == 3);
  CHECK(comp == std::vector<std::uint32_t>{0, 0, 1, 1, 2});
  CHECK(is_bipartite(g));
  CHECK_FALSE(is_bipartite(clique(3)));
}

TEST_CASE("graph stats examples") {
  auto s = graph_stats(path(5), 100, 1);
  CHECK(s.diameter == 4);
  CHECK(s.diameter_exact);
  CHECK(s.connected_components == 1);

  auto k = graph_stats(clique(4), 50, 1);
  CHECK(k.diameter == 1);
  CHECK(k.typical_distance == doctest::Approx(1.0));

  GraphBuilder b(4, NodeKind::variable);
  b.add_edge(0, 1);
  b.add_edge(2, 3);
  auto d = graph_stats(std::move(b).build(), 50, 1);
  CHECK(d.connected_components == 2);
  CHECK(d.diameter == 1);

  CHECK(graph_stats(path(5), 10, 7).typical_distance ==
        graph_stats(path(5), 10, 7).typical_distance);
}

TEST_CASE("diameter matches Floyd-Warshall, large graphs give lower bounds") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    auto g = oracle::random_graph(15, 0.15, rng, it % 2 == 0);
    auto d = oracle::all_pairs(g);
    int dmax = 0;
    for (auto &row : d)
      for (int x : row)
        if (x < oracle::kInf)
          dmax = std::max(dmax, x);
    CHECK(exact_diameter(g) == dmax);
    CHECK(graph_stats(g, 20, 1).diameter == dmax);
    auto est = graph_stats(g, 20, 1, 5);
    CHECK_FALSE(est.diameter_exact);
    CHECK(est.diameter <= dmax);
    CHECK(est.diameter >= (dmax + 1) / 2);
    if (est.connected_components == 1)
      CHECK(est.typical_distance <= dmax);
  }
}

TEST_CASE("complement and edge list") {
  auto c = complement(path(3));
  CHECK(c.edge_count() == 1);
  CHECK(c.has_edge(0, 2));
  std::ostringstream out;
  write_edge_list(build_vig(CnfFormula{3, {{1, 2, 3}}}, true), out);
  const auto text = out.str();
  CHECK(text.find("0 1 0.333333") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
