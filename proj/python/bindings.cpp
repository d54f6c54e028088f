#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cnfscope/cnf.hpp"
#include "cnfscope/community.hpp"
#include "cnfscope/features.hpp"
#include "cnfscope/fractal.hpp"
#include "cnfscope/graph.hpp"
#include "cnfscope/io.hpp"
#include "cnfscope/portfolio.hpp"
#include "cnfscope/scalefree.hpp"

namespace py = pybind11;
using namespace cnfscope;

namespace {

CenterOrdering ordering_of(const std::string &name) {
  if (name == "desc")
    return CenterOrdering::desc_degree;
  if (name == "asc")
    return CenterOrdering::asc_degree;
  throw py::value_error("ordering must be 'desc' or 'asc'");
}

Graph graph_of(const CnfFormula &f, const std::string &model, bool weighted) {
  if (model == "vig")
    return build_vig(f, weighted);
  if (model == "cvig")
    return build_cvig(f, weighted);
  if (model == "cig")
    return build_cig(f);
  throw py::value_error("model must be 'vig', 'cvig' or 'cig'");
}

py::dict fit_dict(const DimensionFit &fit) {
  py::dict d;
  d["d"] = fit.d;
  d["beta"] = fit.beta;
  d["r_lo"] = fit.r_lo;
  d["r_hi"] = fit.r_hi;
  d["residual"] = fit.residual;
  d["residual_semilog"] = fit.residual_semilog;
  d["intercept_loglog"] = fit.intercept_loglog;
  d["intercept_semilog"] = fit.intercept_semilog;
  return d;
}

py::dict features_dict(const FeatureVector &v) {
  py::dict d;
  for (Feature f : kAllFeatures) {
    if (f == Feature::r_max)
      d["r_max"] = v.r_max ? py::cast(*v.r_max) : py::none();
    else if (f == Feature::n || f == Feature::m)
      d[py::str(std::string(feature_name(f)))] = static_cast<std::int64_t>(v.get(f));
    else
      d[py::str(std::string(feature_name(f)))] = v.get(f);
  }
  return d;
}

std::vector<Feature> features_of(const std::vector<std::string> &names) {
  std::vector<Feature> out;
  for (const auto &n : names) {
    auto f = parse_feature(n);
    if (!f)
      throw py::value_error("unknown feature '" + n + "'");
    out.push_back(*f);
  }
  return out;
}

FeatureMatrix matrix_of(const std::string &csv) {
  std::istringstream in(csv);
  return read_feature_csv(in).matrix;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structural features of CNF formulas";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<CnfFormula>(m, "CnfFormula")
      .def(py::init<>())
      .def(py::init([](int n, std::vector<Clause> clauses) {
             CnfFormula f{n, std::move(clauses)};
             validate(f);
             return f;
           }),
           py::arg("num_vars"), py::arg("clauses"))
      .def_readwrite("num_vars", &CnfFormula::num_vars)
      .def_readwrite("clauses", &CnfFormula::clauses)
      .def_property_readonly("num_clauses", &CnfFormula::num_clauses)
      .def("__eq__", [](const CnfFormula &a, const CnfFormula &b) { return a == b; })
      .def("__repr__", [](const CnfFormula &f) {
        return "<CnfFormula n=" + std::to_string(f.num_vars) +
               " m=" + std::to_string(f.num_clauses()) + ">";
      });

  m.def(
      "parse_dimacs",
      [](const std::string &text) {
        auto r = parse_dimacs(text);
        return py::make_tuple(r.formula, r.warnings);
      },
      py::arg("text"), "Parse DIMACS text; returns (formula, warnings).");
  m.def(
      "read_dimacs",
      [](const std::string &path) {
        auto r = read_dimacs_file(path);
        return py::make_tuple(r.formula, r.warnings);
      },
      py::arg("path"));
  m.def("to_dimacs", &to_dimacs, py::arg("formula"));
  m.def("random_3cnf", &random_3cnf, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def(
      "unit_propagate",
      [](const CnfFormula &f) {
        auto r = unit_propagate(f);
        py::dict d;
        d["formula"] = r.formula;
        d["assignment"] = r.assignment;
        d["conflict"] = r.conflict ? py::cast(*r.conflict) : py::none();
        return d;
      },
      py::arg("formula"));

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("degree", &Graph::degree, py::arg("node"))
      .def("neighbors",
           [](const Graph &g, NodeId u) {
             auto nb = g.neighbors(u);
             return std::vector<NodeId>(nb.begin(), nb.end());
           },
           py::arg("node"))
      .def("edges", [](const Graph &g) {
        std::vector<std::tuple<NodeId, NodeId, double>> out;
        for (NodeId u = 0; u < g.node_count(); ++u) {
          auto nb = g.neighbors(u);
          auto ws = g.weights(u);
          for (std::size_t i = 0; i < nb.size(); ++i)
            if (u < nb[i])
              out.emplace_back(u, nb[i], ws[i]);
        }
        return out;
      });

  m.def("build_graph", &graph_of, py::arg("formula"), py::arg("model") = "vig",
        py::arg("weighted") = false);
  m.def(
      "graph_stats",
      [](const Graph &g, std::size_t pairs, std::uint64_t seed) {
        auto s = graph_stats(g, pairs, seed);
        py::dict d;
        d["diameter"] = s.diameter;
        d["diameter_exact"] = s.diameter_exact;
        d["typical_distance"] = s.typical_distance;
        d["components"] = s.connected_components;
        return d;
      },
      py::arg("graph"), py::arg("pairs") = 1000, py::arg("seed") = 42);

  m.def(
      "greedy_cover",
      [](const Graph &g, int r, const std::string &ordering) {
        auto c = greedy_cover(g, r, ordering_of(ordering));
        return py::make_tuple(c.count, c.centers);
      },
      py::arg("graph"), py::arg("r"), py::arg("ordering") = "desc");
  m.def("exact_cover_count", &exact_cover_count, py::arg("graph"), py::arg("r"));
  m.def(
      "cover_curve",
      [](const Graph &g, std::optional<int> r_stop, const std::string &ordering) {
        auto c = cover_curve(g, r_stop, ordering_of(ordering));
        py::dict d;
        d["counts"] = c.counts;
        d["r_max"] = c.r_max ? py::cast(*c.r_max) : py::none();
        d["monotone_violations"] = c.monotone_violations;
        return d;
      },
      py::arg("graph"), py::arg("r_stop") = py::none(), py::arg("ordering") = "desc");
  m.def(
      "fit_dimension",
      [](std::vector<std::size_t> counts, int r_lo, int r_hi) {
        CoverCurve c;
        c.counts = std::move(counts);
        return fit_dict(fit_dimension(c, r_lo, r_hi));
      },
      py::arg("counts"), py::arg("r_lo") = 1, py::arg("r_hi") = 5);

  m.def(
      "occurrence_histogram",
      [](const CnfFormula &f) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        for (const auto &e : occurrence_histogram(f).entries)
          out.emplace_back(e.k, e.f);
        return out;
      },
      py::arg("formula"));
  m.def(
      "fit_alpha",
      [](const std::vector<std::uint64_t> &counts, int max_discard) {
        auto fit = fit_alpha(histogram_from_counts(counts), max_discard);
        py::dict d;
        d["alpha"] = fit.alpha;
        d["k_min"] = fit.k_min;
        d["discarded"] = fit.discarded;
        d["ks_error"] = fit.ks_error;
        return d;
      },
      py::arg("counts"), py::arg("max_discard") = 5,
      "Fit the power-law exponent of raw per-variable occurrence counts.");

  m.def(
      "modularity",
      [](const Graph &g, const std::vector<std::uint32_t> &labels) {
        return modularity(g, Partition::from_labels(labels));
      },
      py::arg("graph"), py::arg("labels"));
  m.def(
      "fold_communities",
      [](const Graph &g, std::uint64_t seed, double min_gain) {
        auto r = fold_communities(g, seed, min_gain);
        py::dict d;
        d["q"] = r.q;
        d["partition"] = r.partition.assignment;
        d["communities"] = r.partition.community_count;
        d["levels"] = r.levels;
        return d;
      },
      py::arg("graph"), py::arg("seed") = 42, py::arg("min_gain") = 1e-6);

  m.def(
      "extract_features",
      [](const CnfFormula &f, std::uint64_t seed, const std::string &ordering, int fit_lo,
         int fit_hi, bool monotone_clamp) {
        FeatureConfig cfg;
        cfg.seed = seed;
        cfg.ordering = ordering_of(ordering);
        cfg.fit_lo = fit_lo;
        cfg.fit_hi = fit_hi;
        cfg.monotone_clamp = monotone_clamp;
        FeatureVector v;
        {
          py::gil_scoped_release release;
          v = extract_features(f, cfg);
        }
        return features_dict(v);
      },
      py::arg("formula"), py::arg("seed") = 42, py::arg("ordering") = "desc",
      py::arg("fit_lo") = 1, py::arg("fit_hi") = 5, py::arg("monotone_clamp") = false);

  m.def(
      "predict_runtime",
      [](const std::vector<double> &distances, const std::vector<double> &runtimes) {
        return predict_runtime(distances, runtimes);
      },
      py::arg("distances"), py::arg("runtimes"));
  m.def(
      "portfolio",
      [](const std::string &features_csv, const std::string &runtimes_csv, double timeout,
         const std::vector<std::string> &features) {
        std::istringstream rin(runtimes_csv);
        auto feats = features_of(features);
        auto rep = loo_portfolio_sim(matrix_of(features_csv), read_runtime_csv(rin, timeout),
                                     feats);
        py::dict d;
        d["instances"] = rep.instances;
        d["solved"] = rep.solved;
        d["avg_time"] = rep.avg_time;
        d["avg_time_penalized"] = rep.avg_time_penalized;
        d["vbs"] = rep.vbs_solved;
        d["vbs_avg_time"] = rep.vbs_avg_time;
        py::list chosen;
        for (const auto &o : rep.per_instance)
          chosen.append(py::make_tuple(o.instance, o.chosen));
        d["chosen"] = chosen;
        return d;
      },
      py::arg("features_csv"), py::arg("runtimes_csv"), py::arg("timeout") = 900.0,
      py::arg("features") = std::vector<std::string>{"alpha", "q", "d", "d_b", "ratio"},
      "Leave-one-out portfolio simulation on CSV text.");
  m.def(
      "classify",
      [](const std::string &features_csv, const std::vector<std::string> &features,
         const std::string &mode, std::size_t min_leaf) {
        ClassifierKind kind;
        if (mode == "tree")
          kind = ClassifierKind::tree;
        else if (mode == "knn")
          kind = ClassifierKind::knn;
        else
          throw py::value_error("mode must be 'tree' or 'knn'");
        auto feats = features_of(features);
        auto rep = loo_classify(matrix_of(features_csv), feats, kind, TreeParams{min_leaf});
        py::dict d;
        d["total"] = rep.total;
        d["correct"] = rep.correct;
        d["accuracy"] = rep.accuracy();
        d["predictions"] = rep.predictions;
        d["confusion"] = rep.confusion;
        return d;
      },
      py::arg("features_csv"),
      py::arg("features") = std::vector<std::string>{"alpha", "q", "d", "d_b", "ratio"},
      py::arg("mode") = "tree", py::arg("min_leaf") = 2,
      "Leave-one-out family classification on a feature CSV with a family column.");
}
