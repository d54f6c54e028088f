#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cnfscope/cnf.hpp"
#include "cnfscope/community.hpp"
#include "cnfscope/features.hpp"
#include "cnfscope/fractal.hpp"
#include "cnfscope/graph.hpp"
#include "cnfscope/io.hpp"
#include "cnfscope/portfolio.hpp"
#include "cnfscope/scalefree.hpp"

namespace cnfscope::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 42;

std::uint64_t default_seed() {
  if (const char *env = std::getenv("CNFSCOPE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception &) {
      // fall through to the built-in default
    }
  }
  return kDefaultSeed;
}

struct Options {
  std::uint64_t seed = default_seed();
  std::string model = "vig";
  bool weighted = false;
  std::string ordering = "desc";
  int fit_lo = 1;
  int fit_hi = 5;
  unsigned workers = 1;
  std::string format = "csv";
  bool monotone_clamp = false;
  std::string output;
};

FeatureConfig feature_config(const Options &o) {
  FeatureConfig c;
  c.seed = o.seed;
  c.ordering = o.ordering == "asc" ? CenterOrdering::asc_degree : CenterOrdering::desc_degree;
  c.fit_lo = o.fit_lo;
  c.fit_hi = o.fit_hi;
  c.monotone_clamp = o.monotone_clamp;
  return c;
}

Graph build_model(const CnfFormula &f, const std::string &model, bool weighted) {
  if (model == "vig")
    return build_vig(f, weighted);
  if (model == "cvig")
    return build_cvig(f, weighted);
  return build_cig(f);
}

std::string stem(const std::string &path) {
  auto name = std::filesystem::path(path).filename().string();
  for (const char *ext : {".cnf", ".dimacs"})
    if (name.size() > std::strlen(ext) && name.ends_with(ext))
      return name.substr(0, name.size() - std::strlen(ext));
  return name;
}

CnfFormula load_formula(const std::string &path, std::ostream &err) {
  auto parsed = read_dimacs_file(path);
  for (const auto &w : parsed.warnings)
    err << "warning: " << path << ": " << w << '\n';
  return std::move(parsed.formula);
}

std::vector<Feature> parse_feature_list(const std::string &list) {
  std::vector<Feature> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto f = parse_feature(name);
    if (!f)
      throw std::invalid_argument("unknown feature '" + name + "'");
    out.push_back(*f);
  }
  if (out.empty())
    throw std::invalid_argument("empty feature list");
  return out;
}

json fit_json(const DimensionFit &fit) {
  return {{"d", fit.d},
          {"beta", fit.beta},
          {"window", {fit.r_lo, fit.r_hi}},
          {"residual", fit.residual},
          {"residual_semilog", fit.residual_semilog},
          {"intercept_loglog", fit.intercept_loglog},
          {"intercept_semilog", fit.intercept_semilog}};
}

json features_json(const FeatureVector &v) {
  json j = {{"alpha", v.alpha}, {"q", v.q},         {"d", v.d},
            {"d_b", v.d_b},     {"ratio", v.ratio}, {"beta", v.beta},
            {"beta_b", v.beta_b}, {"n", v.n},       {"m", v.m}};
  j["r_max"] = v.r_max ? json(*v.r_max) : json(nullptr);
  return j;
}

// Writes to --output when given, stdout otherwise.
class Sink {
public:
  Sink(const std::string &path, std::ostream &fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_)
        throw std::runtime_error("cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream &stream() { return *out_; }

private:
  std::ofstream file_;
  std::ostream *out_;
};

// ---------------------------------------------------------------------------

int cmd_features(const Options &o, const std::vector<std::string> &inputs,
                 const std::string &labels_path, const std::string &family,
                 std::ostream &out, std::ostream &err) {
  std::map<std::string, std::string> labels;
  if (!labels_path.empty()) {
    std::ifstream in(labels_path);
    if (!in)
      throw std::runtime_error("cannot open " + labels_path);
    for (auto &[id, fam] : read_labels_csv(in))
      labels[id] = fam;
  }
  const auto config = feature_config(o);
  std::vector<FeatureRecord> records(inputs.size());
  std::vector<std::string> diagnostics(inputs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < inputs.size();) {
      auto &rec = records[i];
      rec.instance = stem(inputs[i]);
      if (auto it = labels.find(rec.instance); it != labels.end())
        rec.family = it->second;
      else if (!family.empty())
        rec.family = family;
      std::ostringstream diag;
      try {
        rec.features = extract_features(load_formula(inputs[i], diag), config);
      } catch (const std::exception &e) {
        rec.error = e.what();
        diag << "warning: " << inputs[i] << ": " << e.what() << '\n';
      }
      diagnostics[i] = diag.str();
    }
  };
  const unsigned workers = std::clamp<unsigned>(o.workers, 1, 256);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w)
      pool.emplace_back(work);
    work();
  }
  for (const auto &d : diagnostics)
    err << d;

  Sink sink(o.output, out);
  if (o.format == "json") {
    json rows = json::array();
    for (const auto &rec : records) {
      json row = {{"instance", rec.instance}};
      row["family"] = rec.family ? json(*rec.family) : json(nullptr);
      if (rec.features)
        row["features"] = features_json(*rec.features);
      else
        row["error"] = rec.error;
      rows.push_back(row);
    }
    sink.stream() << rows.dump(2) << '\n';
  } else {
    write_feature_csv(sink.stream(), records);
  }
  const auto failed = std::count_if(records.begin(), records.end(),
                                    [](const FeatureRecord &r) { return !r.features; });
  if (failed)
    err << "warning: " << failed << " of " << records.size() << " inputs failed\n";
  return 0;
}

int cmd_ndr(const Options &o, const std::string &input, int r_stop, std::ostream &out,
            std::ostream &err) {
  const auto f = load_formula(input, err);
  const Graph g = build_model(f, o.model, o.weighted);
  const auto config = feature_config(o);
  CoverCurve curve = cover_curve(g, r_stop > 0 ? std::optional<int>(r_stop) : std::nullopt,
                                 config.ordering);
  if (curve.monotone_violations && !o.monotone_clamp)
    err << "warning: greedy counts increased at " << curve.monotone_violations
        << " radii (use --monotone-clamp to apply a running minimum)\n";
  if (o.monotone_clamp)
    curve = curve.clamped();
  std::optional<DimensionFit> fit;
  try {
    fit = fit_dimension(curve, o.fit_lo, o.fit_hi);
  } catch (const std::invalid_argument &e) {
    err << "warning: no fit: " << e.what() << '\n';
  }

  Sink sink(o.output, out);
  if (o.format == "json") {
    json j = {{"instance", stem(input)}, {"model", o.model}, {"counts", curve.counts}};
    j["r_max"] = curve.r_max ? json(*curve.r_max) : json(nullptr);
    j["fit"] = fit ? fit_json(*fit) : json(nullptr);
    sink.stream() << j.dump(2) << '\n';
  } else {
    write_curve_csv(sink.stream(), curve);
    if (fit)
      sink.stream() << "# d=" << format_number(fit->d) << " beta=" << format_number(fit->beta)
                    << " window=" << fit->r_lo << ".." << fit->r_hi
                    << " residual=" << format_number(fit->residual) << '\n';
  }
  return 0;
}

struct Dimensions {
  std::string status = "OK";
  double d = 0, d_b = 0;
};

Dimensions dimensions_of(const PropagationResult &res, const FeatureConfig &config) {
  Dimensions dims;
  if (!res.ok()) {
    dims.status = "UNSAT";
    return dims;
  }
  try {
    const auto f = drop_assigned(res.formula, res.assignment);
    dims.d = curve_and_fit(build_vig(f, false), config).fit.d;
    dims.d_b = curve_and_fit(build_cvig(f, false), config).fit.d;
  } catch (const std::exception &) {
    dims.status = "ERROR";
  }
  return dims;
}

int cmd_evolution(const Options &o, const std::string &input, const std::string &trace_path,
                  const std::vector<std::int64_t> &wanted, std::ostream &out,
                  std::ostream &err) {
  const auto f = load_formula(input, err);
  std::ifstream tin(trace_path);
  if (!tin)
    throw std::runtime_error("cannot open " + trace_path);
  const auto trace = parse_trace(tin);
  std::vector<std::int64_t> checkpoints = wanted;
  if (checkpoints.empty())
    for (const auto &cp : trace.checkpoints)
      checkpoints.push_back(cp.decisions);
  for (auto c : checkpoints)
    if (!trace.find(c))
      throw std::invalid_argument("checkpoint " + std::to_string(c) + " missing from trace");

  const auto config = feature_config(o);
  PropagationResult original;
  original.formula = f;
  const auto base = dimensions_of(original, config);

  struct Row {
    std::string checkpoint;
    std::size_t learnt = 0;
    Dimensions learnt_dims, random_dims;
  };
  std::vector<Row> rows;
  rows.push_back({"original", 0, base, base});
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const auto c = checkpoints[i];
    Row row;
    row.checkpoint = std::to_string(c);
    row.learnt = trace.find(c)->learnt.size();
    row.learnt_dims = dimensions_of(augment_with_learnt(f, trace, c), config);
    row.random_dims = dimensions_of(random_replacement(f, trace, c, o.seed + i), config);
    rows.push_back(row);
  }

  Sink sink(o.output, out);
  if (o.format == "json") {
    json arr = json::array();
    for (const auto &r : rows) {
      auto dims = [](const Dimensions &d) {
        json j = {{"status", d.status}};
        if (d.status == "OK") {
          j["d"] = d.d;
          j["d_b"] = d.d_b;
        }
        return j;
      };
      arr.push_back({{"checkpoint", r.checkpoint},
                     {"learnt_clauses", r.learnt},
                     {"learnt", dims(r.learnt_dims)},
                     {"random", dims(r.random_dims)}});
    }
    sink.stream() << arr.dump(2) << '\n';
  } else {
    auto &s = sink.stream();
    s << "checkpoint,learnt_clauses,status_learnt,d_learnt,d_b_learnt,status_random,d_random,"
         "d_b_random\n";
    auto cells = [&](const Dimensions &d) {
      s << ',' << d.status << ',';
      if (d.status == "OK")
        s << format_number(d.d) << ',' << format_number(d.d_b);
      else
        s << ',';
    };
    for (const auto &r : rows) {
      s << r.checkpoint << ',' << r.learnt;
      cells(r.learnt_dims);
      cells(r.random_dims);
      s << '\n';
    }
  }
  return 0;
}

int cmd_gen(const Options &o, int n, std::size_t m, int count, const std::string &outdir,
            std::ostream &out) {
  if (n < 3)
    throw std::invalid_argument("random 3-CNF needs n >= 3");
  std::filesystem::create_directories(outdir);
  for (int k = 0; k < count; ++k) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(k);
    const auto f = random_3cnf(n, m, seed);
    const auto path = std::filesystem::path(outdir) /
                      ("rand_n" + std::to_string(n) + "_m" + std::to_string(m) + "_s" +
                       std::to_string(seed) + ".cnf");
    std::ofstream file(path, std::ios::binary);
    if (!file)
      throw std::runtime_error("cannot write " + path.string());
    file << "c random 3-CNF n=" << n << " m=" << m << " seed=" << seed << '\n';
    write_dimacs(f, file);
    if (!file)
      throw std::runtime_error("write failed: " + path.string());
    out << path.string() << '\n';
  }
  return 0;
}

FeatureMatrix load_features(const std::string &path, const std::string &labels_path,
                            std::ostream &err) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  auto table = read_feature_csv(in);
  for (const auto &w : table.warnings)
    err << "warning: " << w << '\n';
  if (!labels_path.empty()) {
    std::ifstream lin(labels_path);
    if (!lin)
      throw std::runtime_error("cannot open " + labels_path);
    std::map<std::string, std::string> labels;
    for (auto &[id, fam] : read_labels_csv(lin))
      labels[id] = fam;
    for (auto &row : table.matrix.rows)
      if (auto it = labels.find(row.instance); it != labels.end())
        row.family = it->second;
  }
  return std::move(table.matrix);
}

int cmd_classify(const Options &o, const std::string &features_path,
                 const std::string &labels_path, const std::string &mode,
                 const std::string &feature_list, std::size_t min_leaf, std::ostream &out,
                 std::ostream &err) {
  auto matrix = load_features(features_path, labels_path, err);
  std::vector<std::string> unlabeled;
  for (const auto &row : matrix.rows)
    if (!row.family)
      unlabeled.push_back(row.instance);
  if (!unlabeled.empty()) {
    std::string msg = "missing family label for:";
    for (const auto &id : unlabeled)
      msg += " " + id;
    throw std::invalid_argument(msg);
  }
  const auto features = parse_feature_list(feature_list);
  const auto kind = mode == "knn-loo" ? ClassifierKind::knn : ClassifierKind::tree;
  const auto report = loo_classify(matrix, features, kind, TreeParams{min_leaf});

  json confusion = json::object();
  json families = json::object();
  for (const auto &[actual, row] : report.confusion) {
    std::size_t total = 0, hit = 0;
    for (const auto &[pred, c] : row) {
      confusion[actual][pred] = c;
      total += c;
      if (pred == actual)
        hit = c;
    }
    families[actual] = {{"instances", total}, {"correct", hit}};
  }
  json names = json::array();
  for (auto f : features)
    names.push_back(std::string(feature_name(f)));
  json predictions = json::array();
  for (const auto &[inst, pred] : report.predictions)
    predictions.push_back({{"instance", inst}, {"predicted", pred}});
  json j = {{"mode", mode},
            {"features", names},
            {"total", report.total},
            {"correct", report.correct},
            {"accuracy", report.accuracy()},
            {"families", families},
            {"confusion", confusion},
            {"predictions", predictions}};
  Sink sink(o.output, out);
  sink.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_portfolio(const Options &o, const std::string &features_path,
                  const std::string &runtimes_path, double timeout,
                  const std::string &feature_list, std::ostream &out, std::ostream &err) {
  const auto matrix = load_features(features_path, "", err);
  std::ifstream rin(runtimes_path);
  if (!rin)
    throw std::runtime_error("cannot open " + runtimes_path);
  const auto times = read_runtime_csv(rin, timeout);
  const auto features = parse_feature_list(feature_list);
  const auto report = loo_portfolio_sim(matrix, times, features);

  json per = json::array();
  for (const auto &p : report.per_instance) {
    json row = {{"instance", p.instance}, {"chosen", p.chosen}, {"solved", p.runtime.has_value()}};
    row["runtime"] = p.runtime ? json(*p.runtime) : json("TIMEOUT");
    row["best"] = p.best.empty() ? json(nullptr) : json(p.best);
    per.push_back(row);
  }
  json j = {{"instances", report.instances},
            {"solved", report.solved},
            {"avg_time", report.avg_time},
            {"avg_time_penalized", report.avg_time_penalized},
            {"vbs", report.vbs_solved},
            {"vbs_avg_time", report.vbs_avg_time},
            {"timeout", times.timeout},
            {"single_solver_solved", report.single_solver_solved},
            {"per_instance", per}};
  Sink sink(o.output, out);
  sink.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_alpha(const Options &o, const std::string &input, bool histogram, std::ostream &out,
              std::ostream &err) {
  const auto f = load_formula(input, err);
  const auto h = occurrence_histogram(f);
  Sink sink(o.output, out);
  if (histogram) {
    write_histogram_csv(sink.stream(), h);
    return 0;
  }
  const auto fit = fit_alpha(h);
  json j = {{"alpha", fit.alpha},
            {"k_min", fit.k_min},
            {"discarded", fit.discarded},
            {"ks_error", fit.ks_error}};
  sink.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_communities(const Options &o, const std::string &input, double min_gain,
                    bool partition, std::ostream &out, std::ostream &err) {
  const auto f = load_formula(input, err);
  const Graph g = build_model(f, o.model, true);
  const auto res = fold_communities(g, o.seed, min_gain);
  Sink sink(o.output, out);
  if (partition) {
    sink.stream() << "node,community\n";
    for (std::size_t u = 0; u < res.partition.assignment.size(); ++u)
      sink.stream() << u << ',' << res.partition.assignment[u] << '\n';
    return 0;
  }
  json j = {{"q", res.q},
            {"communities", res.partition.community_count},
            {"levels", res.levels},
            {"passes", res.passes}};
  sink.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_graph(const Options &o, const std::string &input, bool edges, std::size_t pairs,
              std::ostream &out, std::ostream &err) {
  const auto f = load_formula(input, err);
  const Graph g = build_model(f, o.model, o.weighted);
  Sink sink(o.output, out);
  if (edges) {
    write_edge_list(g, sink.stream());
    return 0;
  }
  const auto stats = graph_stats(g, pairs, o.seed);
  json j = {{"model", o.model},
            {"nodes", g.node_count()},
            {"edges", g.edge_count()},
            {"diameter", stats.diameter},
            {"diameter_exact", stats.diameter_exact},
            {"typical_distance", stats.typical_distance},
            {"sampled_pairs", stats.sampled_pairs},
            {"components", stats.connected_components}};
  sink.stream() << j.dump(2) << '\n';
  return 0;
}

void add_common(CLI::App *cmd, Options &o) {
  cmd->add_option("--seed", o.seed, "Random seed (default 42, or $CNFSCOPE_SEED)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", o.output, "Write to this file instead of stdout");
}

void add_fractal(CLI::App *cmd, Options &o) {
  cmd->add_option("--ordering", o.ordering, "Center ordering by degree")
      ->check(CLI::IsMember({"desc", "asc"}));
  cmd->add_option("--fit-lo", o.fit_lo, "First radius of the fit window")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--fit-hi", o.fit_hi, "Last radius of the fit window")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--monotone-clamp", o.monotone_clamp,
                "Apply a running minimum to greedy counts before fitting");
}

void add_model(CLI::App *cmd, Options &o) {
  cmd->add_option("--model", o.model, "Graph model")
      ->check(CLI::IsMember({"vig", "cvig", "cig"}));
  cmd->add_flag("--weighted", o.weighted, "Use clause-normalised edge weights");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Structural features of CNF formulas: fractal dimension, power-law "
               "exponent, modularity, and feature-based solver selection"};
  app.name("cnfscope");
  app.require_subcommand(1);
  Options o;

  std::vector<std::string> inputs;
  std::string labels_path, family;
  auto *features = app.add_subcommand("features", "Extract alpha, Q, d, d_b and m/n");
  features->add_option("inputs", inputs, "DIMACS files")->required();
  features->add_option("--labels", labels_path, "CSV of instance,family");
  features->add_option("--family", family, "Family label for every input");
  features->add_option("--workers", o.workers, "Parallel workers")->check(CLI::PositiveNumber);
  add_common(features, o);
  add_fractal(features, o);

  std::string input;
  int r_stop = 0;
  auto *ndr = app.add_subcommand("ndr", "Greedy cover curve N(r) and its fits");
  ndr->add_option("input", input, "DIMACS file")->required();
  ndr->add_option("--r-stop", r_stop, "Last radius to compute");
  add_model(ndr, o);
  add_common(ndr, o);
  add_fractal(ndr, o);

  std::string trace_path;
  std::vector<std::int64_t> checkpoints;
  auto *evolution = app.add_subcommand(
      "evolution", "Dimensions after adding learnt clauses or random replacements");
  evolution->add_option("input", input, "DIMACS file")->required();
  evolution->add_option("--trace", trace_path, "Learnt-clause trace")->required();
  evolution->add_option("--checkpoints", checkpoints, "Decision counts to analyse")
      ->delimiter(',');
  add_common(evolution, o);
  add_fractal(evolution, o);

  int gen_n = 0, gen_count = 1;
  std::size_t gen_m = 0;
  std::string outdir = ".";
  auto *gen = app.add_subcommand("gen", "Generate uniform random 3-CNF files");
  gen->add_option("--n", gen_n, "Variables")->required();
  gen->add_option("--m", gen_m, "Clauses")->required();
  gen->add_option("--count", gen_count, "Number of formulas (seeds seed..seed+count-1)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--outdir", outdir, "Output directory");
  gen->add_option("--seed", o.seed, "First seed");

  std::string features_path, mode = "tree-loo";
  std::string feature_list = "alpha,q,d,d_b,ratio";
  std::size_t min_leaf = 2;
  auto *classify = app.add_subcommand("classify", "Leave-one-out family classification");
  classify->add_option("feature_csv", features_path, "Feature CSV")->required();
  classify->add_option("--labels", labels_path, "CSV of instance,family");
  classify->add_option("--mode", mode, "Classifier")
      ->check(CLI::IsMember({"tree-loo", "knn-loo"}));
  classify->add_option("--features", feature_list, "Comma-separated feature columns");
  classify->add_option("--min-leaf", min_leaf, "Minimum rows per tree leaf");
  classify->add_option("-o,--output", o.output, "Write to this file instead of stdout");

  std::string runtimes_path;
  double timeout = 900.0;
  auto *portfolio = app.add_subcommand("portfolio", "Leave-one-out portfolio simulation");
  portfolio->add_option("feature_csv", features_path, "Feature CSV")->required();
  portfolio->add_option("runtime_csv", runtimes_path, "Runtime CSV")->required();
  portfolio->add_option("--timeout", timeout, "Runtime cap in seconds")
      ->check(CLI::PositiveNumber);
  portfolio->add_option("--features", feature_list, "Comma-separated feature columns");
  portfolio->add_option("-o,--output", o.output, "Write to this file instead of stdout");

  bool histogram = false;
  auto *alpha = app.add_subcommand("alpha", "Power-law exponent of variable occurrences");
  alpha->add_option("input", input, "DIMACS file")->required();
  alpha->add_flag("--histogram", histogram, "Print the k,f histogram instead");
  alpha->add_option("-o,--output", o.output, "Write to this file instead of stdout");

  double min_gain = 1e-6;
  bool partition = false;
  auto *communities = app.add_subcommand("communities", "Modularity by graph folding");
  communities->add_option("input", input, "DIMACS file")->required();
  communities->add_option("--model", o.model, "Graph model (weighted)")
      ->check(CLI::IsMember({"vig", "cvig", "cig"}));
  communities->add_option("--min-gain", min_gain, "Stop when a level gains less");
  communities->add_flag("--partition", partition, "Print node,community rows instead");
  communities->add_option("--seed", o.seed, "Random seed");
  communities->add_option("-o,--output", o.output, "Write to this file instead of stdout");

  bool edges = false;
  std::size_t pairs = 1000;
  auto *graph = app.add_subcommand("graph", "Graph statistics or edge-list export");
  graph->add_option("input", input, "DIMACS file")->required();
  graph->add_flag("--edges", edges, "Print `u v w` edge list instead");
  graph->add_option("--pairs", pairs, "Sampled pairs for the typical distance");
  add_model(graph, o);
  graph->add_option("--seed", o.seed, "Random seed");
  graph->add_option("-o,--output", o.output, "Write to this file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err);
  }

  try {
    if (*features)
      return cmd_features(o, inputs, labels_path, family, out, err);
    if (*ndr)
      return cmd_ndr(o, input, r_stop, out, err);
    if (*evolution)
      return cmd_evolution(o, input, trace_path, checkpoints, out, err);
    if (*gen)
      return cmd_gen(o, gen_n, gen_m, gen_count, outdir, out);
    if (*classify)
      return cmd_classify(o, features_path, labels_path, mode, feature_list, min_leaf, out,
                          err);
    if (*portfolio)
      return cmd_portfolio(o, features_path, runtimes_path, timeout, feature_list, out, err);
    if (*alpha)
      return cmd_alpha(o, input, histogram, out, err);
    if (*communities)
      return cmd_communities(o, input, min_gain, partition, out, err);
    if (*graph)
      return cmd_graph(o, input, edges, pairs, out, err);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

} // namespace cnfscope::cli
