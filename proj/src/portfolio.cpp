#include "cnfscope/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace cnfscope {

std::optional<std::size_t> RuntimeMatrix::find_instance(const std::string &id) const {
  auto it = std::find(instances.begin(), instances.end(), id);
  if (it == instances.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - instances.begin());
}

void RuntimeMatrix::check() const {
  if (!(timeout > 0.0))
    throw std::invalid_argument("timeout must be positive");
  if (times.size() != instances.size())
    throw std::invalid_argument("runtime rows do not match instance count");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i].size() != solvers.size())
      throw std::invalid_argument("runtime row '" + instances[i] +
                                  "' does not match solver count");
    for (const auto &t : times[i])
      if (t && !(*t > 0.0 && *t <= timeout))
        throw std::invalid_argument("runtime " + std::to_string(*t) + " of '" +
                                    instances[i] + "' outside (0, timeout]");
  }
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("feature vectors differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double predict_runtime(std::span<const double> distances, std::span<const double> runtimes) {
  if (distances.empty() || distances.size() != runtimes.size())
    throw std::invalid_argument("runtime prediction needs matching, nonempty inputs");
  double exact_sum = 0.0;
  std::size_t exact = 0;
  for (std::size_t j = 0; j < distances.size(); ++j)
    if (distances[j] == 0.0) {
      exact_sum += runtimes[j];
      ++exact;
    }
  if (exact > 0)
    return exact_sum / static_cast<double>(exact);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < distances.size(); ++j) {
    const double w = 1.0 / (distances[j] * distances[j]);
    num += runtimes[j] * w;
    den += w;
  }
  return num / den;
}

std::size_t select_solver(std::span<const double> predictions,
                          std::span<const std::string> solver_names) {
  if (predictions.empty() || predictions.size() != solver_names.size())
    throw std::invalid_argument("solver selection needs one prediction per solver");
  std::size_t best = 0;
  for (std::size_t s = 1; s < predictions.size(); ++s)
    if (predictions[s] < predictions[best] ||
        (predictions[s] == predictions[best] && solver_names[s] < solver_names[best]))
      best = s;
  return best;
}

std::vector<double> predict_all(std::span<const double> test,
                                const std::vector<std::vector<double>> &train_points,
                                std::span<const std::size_t> train_instances,
                                const RuntimeMatrix &times) {
  if (train_points.empty())
    throw std::invalid_argument("empty training set");
  if (train_points.size() != train_instances.size())
    throw std::invalid_argument("training points and instances differ in length");
  std::vector<double> dist(train_points.size());
  for (std::size_t j = 0; j < train_points.size(); ++j)
    dist[j] = euclidean_distance(test, train_points[j]);
  std::vector<double> predictions(times.solvers.size());
  std::vector<double> runtimes(train_points.size());
  for (std::size_t s = 0; s < times.solvers.size(); ++s) {
    for (std::size_t j = 0; j < train_instances.size(); ++j)
      runtimes[j] = times.charged(train_instances[j], s);
    predictions[s] = predict_runtime(dist, runtimes);
  }
  return predictions;
}

namespace {

// Row i of the matrix -> runtime row. Throws listing unmatched ids.
std::vector<std::size_t> align(const FeatureMatrix &matrix, const RuntimeMatrix &times) {
  std::vector<std::size_t> map;
  std::vector<std::string> missing_runtime, missing_features;
  for (const auto &row : matrix.rows) {
    auto idx = times.find_instance(row.instance);
    if (!idx)
      missing_runtime.push_back(row.instance);
    else
      map.push_back(*idx);
  }
  for (const auto &id : times.instances) {
    bool found = std::any_of(matrix.rows.begin(), matrix.rows.end(),
                             [&](const FeatureRow &r) { return r.instance == id; });
    if (!found)
      missing_features.push_back(id);
  }
  if (missing_runtime.empty() && missing_features.empty())
    return map;
  std::string msg = "instance ids differ between features and runtimes";
  auto list = [&](const char *what, const std::vector<std::string> &ids) {
    if (ids.empty())
      return;
    msg += std::string("; ") + what + ":";
    for (const auto &id : ids)
      msg += " " + id;
  };
  list("no runtimes for", missing_runtime);
  list("no features for", missing_features);
  throw std::invalid_argument(msg);
}

} // namespace

SimulationReport loo_portfolio_sim(const FeatureMatrix &matrix, const RuntimeMatrix &times,
                                   std::span<const Feature> features) {
  times.check();
  if (matrix.rows.size() < 2)
    throw std::invalid_argument("leave-one-out simulation needs at least two instances");
  if (times.solvers.empty())
    throw std::invalid_argument("runtime matrix has no solvers");
  const auto runtime_row = align(matrix, times);
  const std::size_t n = matrix.rows.size();

  SimulationReport report;
  report.instances = n;
  for (const auto &s : times.solvers)
    report.single_solver_solved[s] = 0;

  double solved_time = 0.0, charged_time = 0.0, vbs_time = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> training;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i)
        training.push_back(j);
    const auto norm = fit_normalization(matrix, training, features);
    std::vector<std::vector<double>> points;
    std::vector<std::size_t> train_rows;
    for (std::size_t j : training) {
      points.push_back(norm.apply(matrix.rows[j].features));
      train_rows.push_back(runtime_row[j]);
    }
    const auto test = norm.apply(matrix.rows[i].features);
    const auto predictions = predict_all(test, points, train_rows, times);
    const std::size_t chosen = select_solver(predictions, times.solvers);

    const std::size_t r = runtime_row[i];
    SimulationReport::Outcome out;
    out.instance = matrix.rows[i].instance;
    out.chosen = times.solvers[chosen];
    out.runtime = times.times[r][chosen];
    if (out.runtime) {
      ++report.solved;
      solved_time += *out.runtime;
    }
    charged_time += times.charged(r, chosen);

    std::optional<std::size_t> best;
    for (std::size_t s = 0; s < times.solvers.size(); ++s) {
      if (!times.solved(r, s))
        continue;
      ++report.single_solver_solved[times.solvers[s]];
      if (!best || *times.times[r][s] < *times.times[r][*best])
        best = s;
    }
    if (best) {
      ++report.vbs_solved;
      vbs_time += *times.times[r][*best];
      out.best = times.solvers[*best];
    }
    report.per_instance.push_back(std::move(out));
  }
  report.avg_time = report.solved ? solved_time / static_cast<double>(report.solved) : 0.0;
  report.avg_time_penalized = charged_time / static_cast<double>(n);
  report.vbs_avg_time = report.vbs_solved ? vbs_time / static_cast<double>(report.vbs_solved) : 0.0;
  return report;
}

// ---------------------------------------------------------------------------
// Decision tree

const std::string &DecisionTree::predict(std::span<const double> x) const {
  if (nodes.empty())
    throw std::logic_error("empty decision tree");
  const Node *node = &nodes[0];
  while (!node->leaf())
    node = &nodes[x[static_cast<std::size_t>(node->feature)] <= node->threshold
                      ? node->left
                      : node->right];
  return node->label;
}

std::size_t DecisionTree::depth() const {
  std::function<std::size_t(int)> rec = [&](int i) -> std::size_t {
    const auto &n = nodes[static_cast<std::size_t>(i)];
    return n.leaf() ? 0 : 1 + std::max(rec(n.left), rec(n.right));
  };
  return nodes.empty() ? 0 : rec(0);
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node &n) { return n.leaf(); }));
}

namespace {

double entropy(const std::map<std::string, std::size_t> &counts, std::size_t total) {
  double h = 0.0;
  for (const auto &[label, c] : counts) {
    if (c == 0)
      continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::string majority(const std::map<std::string, std::size_t> &counts) {
  std::string best;
  std::size_t best_count = 0;
  for (const auto &[label, c] : counts) // map order: ties keep the smaller label
    if (c > best_count) {
      best = label;
      best_count = c;
    }
  return best;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
  double ratio = 0.0;
};

class TreeGrower {
public:
  TreeGrower(const std::vector<std::vector<double>> &points,
             const std::vector<std::string> &labels, const TreeParams &params)
      : points_(points), labels_(labels), params_(params) {}

  DecisionTree grow() {
    std::vector<std::size_t> rows(points_.size());
    std::iota(rows.begin(), rows.end(), 0);
    build(rows);
    return std::move(tree_);
  }

private:
  int build(const std::vector<std::size_t> &rows) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    std::map<std::string, std::size_t> counts;
    for (auto r : rows)
      ++counts[labels_[r]];
    tree_.nodes[id].support = counts;
    tree_.nodes[id].label = majority(counts);
    if (counts.size() <= 1 || rows.size() < 2 * std::max<std::size_t>(params_.min_leaf, 1))
      return id;

    const auto split = best_split(rows, counts);
    if (split.feature < 0)
      return id;
    std::vector<std::size_t> left, right;
    for (auto r : rows)
      (points_[r][split.feature] <= split.threshold ? left : right).push_back(r);
    const int l = build(left);
    const int rgt = build(right);
    auto &node = tree_.nodes[id];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = rgt;
    return id;
  }

  Split best_split(const std::vector<std::size_t> &rows,
                   const std::map<std::string, std::size_t> &counts) const {
    const std::size_t total = rows.size();
    const double base = entropy(counts, total);
    const std::size_t dims = points_[rows.front()].size();
    const std::size_t min_leaf = std::max<std::size_t>(params_.min_leaf, 1);

    std::vector<Split> candidates; // best threshold per feature, by gain
    std::vector<std::size_t> order(rows);
    for (std::size_t f = 0; f < dims; ++f) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return points_[a][f] < points_[b][f];
      });
      std::map<std::string, std::size_t> below, above = counts;
      Split best;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const auto &lab = labels_[order[i]];
        ++below[lab];
        if (--above[lab] == 0)
          above.erase(lab);
        const double x = points_[order[i]][f], next = points_[order[i + 1]][f];
        if (!(x < next))
          continue;
        const std::size_t nl = i + 1, nr = total - nl;
        if (nl < min_leaf || nr < min_leaf)
          continue;
        const double pl = static_cast<double>(nl) / static_cast<double>(total);
        const double pr = 1.0 - pl;
        const double gain = base - pl * entropy(below, nl) - pr * entropy(above, nr);
        if (gain > best.gain + 1e-12) {
          const double split_info = -pl * std::log2(pl) - pr * std::log2(pr);
          best = {static_cast<int>(f), x + (next - x) / 2.0, gain, gain / split_info};
        }
      }
      if (best.feature >= 0)
        candidates.push_back(best);
    }
    if (candidates.empty())
      return {};
    double mean_gain = 0.0;
    for (const auto &c : candidates)
      mean_gain += c.gain;
    mean_gain /= static_cast<double>(candidates.size());
    Split chosen;
    for (const auto &c : candidates)
      if (c.gain >= mean_gain - 1e-12 && (chosen.feature < 0 || c.ratio > chosen.ratio + 1e-12))
        chosen = c;
    return chosen;
  }

  const std::vector<std::vector<double>> &points_;
  const std::vector<std::string> &labels_;
  TreeParams params_;
  DecisionTree tree_;
};

std::vector<double> raw_point(const FeatureVector &v, std::span<const Feature> features) {
  std::vector<double> x;
  x.reserve(features.size());
  for (Feature f : features)
    x.push_back(v.get(f));
  return x;
}

std::string knn_vote(const std::vector<double> &test,
                     const std::vector<std::vector<double>> &points,
                     const std::vector<std::string> &labels) {
  std::map<std::string, double> exact, weighted;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double d = euclidean_distance(test, points[j]);
    if (d == 0.0)
      exact[labels[j]] += 1.0;
    else
      weighted[labels[j]] += 1.0 / (d * d);
  }
  const auto &votes = exact.empty() ? weighted : exact;
  std::string best;
  double best_score = -1.0;
  for (const auto &[label, score] : votes)
    if (score > best_score) {
      best = label;
      best_score = score;
    }
  return best;
}

} // namespace

DecisionTree train_tree(const std::vector<std::vector<double>> &points,
                        const std::vector<std::string> &labels, const TreeParams &params) {
  if (points.empty())
    throw std::invalid_argument("cannot train a tree on empty data");
  if (points.size() != labels.size())
    throw std::invalid_argument("points and labels differ in length");
  for (const auto &p : points)
    for (double x : p)
      if (!std::isfinite(x))
        throw std::invalid_argument("tree features must be finite");
  return TreeGrower(points, labels, params).grow();
}

ClassificationReport loo_classify(const FeatureMatrix &matrix,
                                  std::span<const Feature> features, ClassifierKind kind,
                                  const TreeParams &params) {
  if (matrix.rows.size() < 2)
    throw std::invalid_argument("leave-one-out classification needs at least two rows");
  std::vector<std::size_t> order(matrix.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return matrix.rows[a].instance < matrix.rows[b].instance;
  });
  for (auto i : order)
    if (!matrix.rows[i].family)
      throw std::invalid_argument("row '" + matrix.rows[i].instance + "' has no family label");

  ClassificationReport report;
  for (std::size_t held : order) {
    std::vector<std::size_t> training;
    for (std::size_t j : order)
      if (j != held)
        training.push_back(j);
    std::vector<std::string> labels;
    for (auto j : training)
      labels.push_back(*matrix.rows[j].family);

    std::string predicted;
    if (kind == ClassifierKind::tree) {
      std::vector<std::vector<double>> points;
      for (auto j : training)
        points.push_back(raw_point(matrix.rows[j].features, features));
      auto tree = train_tree(points, labels, params);
      predicted = tree.predict(raw_point(matrix.rows[held].features, features));
    } else {
      const auto norm = fit_normalization(matrix, training, features);
      std::vector<std::vector<double>> points;
      for (auto j : training)
        points.push_back(norm.apply(matrix.rows[j].features));
      predicted = knn_vote(norm.apply(matrix.rows[held].features), points, labels);
    }

    const auto &actual = *matrix.rows[held].family;
    ++report.total;
    if (predicted == actual)
      ++report.correct;
    ++report.confusion[actual][predicted];
    report.predictions.emplace_back(matrix.rows[held].instance, predicted);
  }
  return report;
}

} // namespace cnfscope
