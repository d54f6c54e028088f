#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cnfscope/features.hpp"

namespace cnfscope {

/// Runtimes of a set of solvers on a set of instances. A missing value is a
/// timeout.
struct RuntimeMatrix {
  std::vector<std::string> instances;
  std::vector<std::string> solvers;
  /// times[instance][solver]
  std::vector<std::vector<std::optional<double>>> times;
  double timeout = 900.0;

  bool solved(std::size_t instance, std::size_t solver) const {
    return times[instance][solver].has_value();
  }
  /// Runtime with timeouts charged at the cap.
  double charged(std::size_t instance, std::size_t solver) const {
    return times[instance][solver].value_or(timeout);
  }
  std::optional<std::size_t> find_instance(const std::string &id) const;

  /// Throws std::invalid_argument when shapes disagree or a runtime is
  /// outside (0, timeout].
  void check() const;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Inverse-squared-distance weighted mean of `runtimes`. When some distances
/// are zero, the plain mean over those exact matches is returned.
double predict_runtime(std::span<const double> distances, std::span<const double> runtimes);

/// Index of the smallest prediction; ties go to the lexicographically
/// smallest solver name.
std::size_t select_solver(std::span<const double> predictions,
                          std::span<const std::string> solver_names);

/// Predicted runtime of every solver for `test`, from training points and
/// the runtime rows they correspond to.
std::vector<double> predict_all(std::span<const double> test,
                                const std::vector<std::vector<double>> &train_points,
                                std::span<const std::size_t> train_instances,
                                const RuntimeMatrix &times);

struct SimulationReport {
  struct Outcome {
    std::string instance;
    std::string chosen;
    std::optional<double> runtime;
    std::string best; // virtual best solver, empty if none solves it
  };

  std::size_t instances = 0;
  std::size_t solved = 0;
  /// Mean runtime over solved instances.
  double avg_time = 0.0;
  /// Mean over all instances with timeouts charged at the cap.
  double avg_time_penalized = 0.0;
  std::size_t vbs_solved = 0;
  double vbs_avg_time = 0.0;
  /// Instances solved by each solver alone.
  std::map<std::string, std::size_t> single_solver_solved;
  std::vector<Outcome> per_instance;
};

/// Leave-one-out solver selection: each instance is handled by the solver
/// with the smallest predicted runtime, using all other instances (features
/// min-max scaled on them) as training data. Feature rows and runtime rows
/// are matched by instance id; mismatches throw std::invalid_argument listing
/// the offending ids.
SimulationReport loo_portfolio_sim(const FeatureMatrix &matrix, const RuntimeMatrix &times,
                                   std::span<const Feature> features = kDefaultFeatures);

/// C4.5-style classification tree on continuous features.
struct DecisionTree {
  struct Node {
    int feature = -1; // -1 for leaves
    double threshold = 0.0;
    int left = -1;  // value <= threshold
    int right = -1; // value > threshold
    std::string label;
    std::map<std::string, std::size_t> support;

    bool leaf() const { return feature < 0; }
  };
  std::vector<Node> nodes; // nodes[0] is the root

  const std::string &predict(std::span<const double> x) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;
};

struct TreeParams {
  std::size_t min_leaf = 2;
};

/// Binary splits `x[f] <= t` with t a midpoint between consecutive distinct
/// values. Among candidate splits whose information gain is at least the
/// average, the one with the largest gain ratio is taken. Growth stops on
/// pure nodes, when no split leaves `min_leaf` rows per side, or when no
/// split has positive gain. No pruning.
DecisionTree train_tree(const std::vector<std::vector<double>> &points,
                        const std::vector<std::string> &labels,
                        const TreeParams &params = {});

enum class ClassifierKind { tree, knn };

struct ClassificationReport {
  std::size_t total = 0;
  std::size_t correct = 0;
  /// confusion[actual][predicted]
  std::map<std::string, std::map<std::string, std::size_t>> confusion;
  std::vector<std::pair<std::string, std::string>> predictions; // (instance, predicted)

  double accuracy() const {
    return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
  }
};

/// Leave-one-out family classification. Rows must carry a family label.
/// `knn` votes with inverse-squared-distance weights over min-max scaled
/// features; `tree` uses raw feature values.
ClassificationReport loo_classify(const FeatureMatrix &matrix,
                                  std::span<const Feature> features,
                                  ClassifierKind kind = ClassifierKind::tree,
                                  const TreeParams &params = {});

} // namespace cnfscope
