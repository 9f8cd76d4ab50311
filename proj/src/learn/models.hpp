#pragma once

// Concrete classifiers behind the Model interface.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lifegraph/learn/classifier.hpp"

namespace lifegraph::detail {

// ---- OneR ----------------------------------------------------------------

/// Single-attribute rule: ascending thresholds split the attribute into
/// buckets, each scored by its training positive fraction.
class OneRModel final : public Model {
 public:
  std::size_t attribute = 0;
  std::vector<double> thresholds;  // bucket i holds values < thresholds[i]
  std::vector<double> scores;      // thresholds.size() + 1 entries
  double missing_score = 0.0;
  double training_accuracy = 0.0;

  ClassifierKind kind() const noexcept override { return ClassifierKind::OneR; }
  double score(std::span<const double> row) const override;
  nlohmann::ordered_json to_json() const override;
  static std::unique_ptr<OneRModel> from_json(const nlohmann::json& j);
};

std::unique_ptr<OneRModel> train_one_r(const LabeledTable& data, std::span<const std::size_t> rows,
                                       int min_bucket);

// ---- Decision tree -----------------------------------------------------------

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // known values <= threshold go left
  double left_fraction = 0.5;  // share of known training weight sent left
  int left = -1;
  int right = -1;
  double score = 0.0;  // positive fraction of the training weight reaching the node
};

class TreeModel final : public Model {
 public:
  ClassifierKind reported_kind = ClassifierKind::C45Tree;
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  ClassifierKind kind() const noexcept override { return reported_kind; }
  double score(std::span<const double> row) const override;
  nlohmann::ordered_json to_json() const override;
  static std::unique_ptr<TreeModel> from_json(const nlohmann::json& j);

 private:
  double score_from(int node, std::span<const double> row) const;
};

struct TreeOptions {
  double min_leaf_weight = 2.0;
  /// Features evaluated per node; nullopt evaluates all of them.
  std::optional<std::size_t> features_per_split;
  std::uint64_t seed = 1;
};

/// Unpruned C4.5-style tree over the given rows with per-row weights.
std::unique_ptr<TreeModel> grow_tree(const LabeledTable& data, std::span<const std::size_t> rows,
                                     std::span<const double> weights, const TreeOptions& options);

// ---- KNN ---------------------------------------------------------------------

class KnnModel final : public Model {
 public:
  int k = 3;
  std::size_t width = 0;
  std::vector<double> minimum;  // per feature, NaN when never observed
  std::vector<double> maximum;
  std::vector<double> normalized;  // training rows, range-normalized
  std::vector<std::uint8_t> labels;

  ClassifierKind kind() const noexcept override { return ClassifierKind::KNN; }
  double score(std::span<const double> row) const override;
  nlohmann::ordered_json to_json() const override;
  static std::unique_ptr<KnnModel> from_json(const nlohmann::json& j);

  double normalize(std::size_t feature, double value) const;
};

std::unique_ptr<KnnModel> train_knn(const LabeledTable& data, std::span<const std::size_t> rows,
                                    int k);

// ---- Naive Bayes -------------------------------------------------------------

struct GaussianTerm {
  bool used = false;
  double mean[2] = {0.0, 0.0};
  double sd[2] = {1.0, 1.0};
};

class NaiveBayesModel final : public Model {
 public:
  double log_prior[2] = {0.0, 0.0};
  std::vector<GaussianTerm> terms;

  ClassifierKind kind() const noexcept override { return ClassifierKind::NaiveBayes; }
  double score(std::span<const double> row) const override;
  nlohmann::ordered_json to_json() const override;
  static std::unique_ptr<NaiveBayesModel> from_json(const nlohmann::json& j);
};

std::unique_ptr<NaiveBayesModel> train_naive_bayes(const LabeledTable& data,
                                                   std::span<const std::size_t> rows);

// ---- Ensembles ---------------------------------------------------------------

class EnsembleModel final : public Model {
 public:
  ClassifierKind reported_kind = ClassifierKind::RandomForest;
  std::vector<std::unique_ptr<TreeModel>> trees;

  ClassifierKind kind() const noexcept override { return reported_kind; }
  double score(std::span<const double> row) const override;
  nlohmann::ordered_json to_json() const override;
  static std::unique_ptr<EnsembleModel> from_json(const nlohmann::json& j, ClassifierKind kind);
};

std::unique_ptr<EnsembleModel> train_ensemble(const ClassifierSpec& spec, const LabeledTable& data,
                                              std::span<const std::size_t> rows);

// ---- JSON helpers ------------------------------------------------------------

/// NaN-safe number encoding: NaN becomes null.
nlohmann::ordered_json number_or_null(double v);
double number_from(const nlohmann::json& j);

}  // namespace lifegraph::detail
