#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include <json.hpp>

#include "lifegraph/learn/labeled_table.hpp"

namespace lifegraph {

enum class ClassifierKind { OneR, C45Tree, KNN, NaiveBayes, RandomForest, Bagging };

inline constexpr std::array kAllClassifierKinds = {
    ClassifierKind::OneR,       ClassifierKind::C45Tree,      ClassifierKind::KNN,
    ClassifierKind::NaiveBayes, ClassifierKind::RandomForest, ClassifierKind::Bagging};

/// "one-r", "c45", "knn", "naive-bayes", "random-forest", "bagging".
std::string_view classifier_name(ClassifierKind kind) noexcept;

/// Accepts the names above plus "oner", "j48", "decision-tree", "ibk",
/// "nb", "rf".
std::optional<ClassifierKind> parse_classifier_kind(std::string_view name);

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::C45Tree;
  int k = 3;                // KNN neighbours
  int tree_count = 10;      // RandomForest, Bagging
  int min_bucket = 6;       // OneR
  bool pruning = false;     // must stay false; trees are grown unpruned
  /// Features tried per split by RandomForest; default ceil(sqrt(p)).
  std::optional<int> split_candidates;
  /// Bootstrap resampling for RandomForest and Bagging.
  bool bootstrap = true;
  std::uint64_t seed = 1;

  /// Throws DataError for invalid parameters.
  void validate() const;
};

nlohmann::ordered_json to_json(const ClassifierSpec& spec);

/// A trained classifier. score() returns the positive-class probability in
/// [0, 1]; NaN entries in the row are missing values.
class Model {
 public:
  virtual ~Model() = default;
  virtual ClassifierKind kind() const noexcept = 0;
  virtual double score(std::span<const double> row) const = 0;
  virtual nlohmann::ordered_json to_json() const = 0;
};

inline constexpr double kDecisionThreshold = 0.5;

/// Trains on all rows of `data`.
std::unique_ptr<Model> train(const ClassifierSpec& spec, const LabeledTable& data);

/// Trains on the listed rows of `data` only.
std::unique_ptr<Model> train(const ClassifierSpec& spec, const LabeledTable& data,
                             std::span<const std::size_t> rows);

/// Versioned JSON document holding the spec, feature names and model.
nlohmann::ordered_json save_model(const Model& model, const ClassifierSpec& spec,
                                  std::span<const std::string> feature_names);

struct LoadedModel {
  ClassifierSpec spec;
  std::vector<std::string> feature_names;
  std::unique_ptr<Model> model;
};

LoadedModel load_model(const nlohmann::json& document);

}  // namespace lifegraph
