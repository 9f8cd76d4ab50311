#include "lifegraph/learn/classifier.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "lifegraph/error.hpp"
#include "models.hpp"

namespace lifegraph {
namespace {

constexpr std::string_view kModelFormat = "lifegraph-model";
constexpr int kModelVersion = 1;

}  // namespace

std::string_view classifier_name(ClassifierKind kind) noexcept {
  switch (kind) {
    case ClassifierKind::OneR:
      return "one-r";
    case ClassifierKind::C45Tree:
      return "c45";
    case ClassifierKind::KNN:
      return "knn";
    case ClassifierKind::NaiveBayes:
      return "naive-bayes";
    case ClassifierKind::RandomForest:
      return "random-forest";
    case ClassifierKind::Bagging:
      return "bagging";
  }
  return "unknown";
}

std::optional<ClassifierKind> parse_classifier_kind(std::string_view name) {
  for (ClassifierKind k : kAllClassifierKinds) {
    if (name == classifier_name(k)) return k;
  }
  if (name == "oner") return ClassifierKind::OneR;
  if (name == "j48" || name == "decision-tree") return ClassifierKind::C45Tree;
  if (name == "ibk") return ClassifierKind::KNN;
  if (name == "nb") return ClassifierKind::NaiveBayes;
  if (name == "rf") return ClassifierKind::RandomForest;
  return std::nullopt;
}

void ClassifierSpec::validate() const {
  if (kind == ClassifierKind::KNN && k < 1) throw DataError("KNN needs k >= 1");
  if ((kind == ClassifierKind::RandomForest || kind == ClassifierKind::Bagging) && tree_count < 1) {
    throw DataError("ensembles need tree_count >= 1");
  }
  if (kind == ClassifierKind::OneR && min_bucket < 1) throw DataError("OneR needs min_bucket >= 1");
  if (pruning) throw DataError("pruning is not supported; trees are grown unpruned");
  if (split_candidates && *split_candidates < 1) throw DataError("split_candidates must be >= 1");
}

nlohmann::ordered_json to_json(const ClassifierSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = classifier_name(spec.kind);
  switch (spec.kind) {
    case ClassifierKind::OneR:
      j["min_bucket"] = spec.min_bucket;
      break;
    case ClassifierKind::C45Tree:
      j["pruning"] = spec.pruning;
      break;
    case ClassifierKind::KNN:
      j["k"] = spec.k;
      break;
    case ClassifierKind::NaiveBayes:
      break;
    case ClassifierKind::RandomForest:
      j["tree_count"] = spec.tree_count;
      j["split_candidates"] =
          spec.split_candidates ? nlohmann::ordered_json(*spec.split_candidates) : nullptr;
      j["bootstrap"] = spec.bootstrap;
      j["seed"] = spec.seed;
      break;
    case ClassifierKind::Bagging:
      j["tree_count"] = spec.tree_count;
      j["bootstrap"] = spec.bootstrap;
      j["seed"] = spec.seed;
      break;
  }
  return j;
}

namespace {

ClassifierSpec spec_from_json(const nlohmann::json& j) {
  ClassifierSpec spec;
  const auto kind = parse_classifier_kind(j.at("kind").get<std::string>());
  if (!kind) throw DataError("unknown classifier kind '" + j.at("kind").get<std::string>() + "'");
  spec.kind = *kind;
  if (j.contains("min_bucket")) spec.min_bucket = j.at("min_bucket").get<int>();
  if (j.contains("pruning")) spec.pruning = j.at("pruning").get<bool>();
  if (j.contains("k")) spec.k = j.at("k").get<int>();
  if (j.contains("tree_count")) spec.tree_count = j.at("tree_count").get<int>();
  if (j.contains("split_candidates") && !j.at("split_candidates").is_null()) {
    spec.split_candidates = j.at("split_candidates").get<int>();
  }
  if (j.contains("bootstrap")) spec.bootstrap = j.at("bootstrap").get<bool>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  spec.validate();
  return spec;
}

}  // namespace

std::unique_ptr<Model> train(const ClassifierSpec& spec, const LabeledTable& data) {
  std::vector<std::size_t> rows(data.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return train(spec, data, rows);
}

std::unique_ptr<Model> train(const ClassifierSpec& spec, const LabeledTable& data,
                             std::span<const std::size_t> rows) {
  spec.validate();
  if (rows.empty()) throw InsufficientDataError("no training rows");
  for (std::size_t r : rows) {
    if (r >= data.rows()) throw DataError("training row index out of range");
  }
  switch (spec.kind) {
    case ClassifierKind::OneR:
      return detail::train_one_r(data, rows, spec.min_bucket);
    case ClassifierKind::C45Tree: {
      const std::vector<double> weights(rows.size(), 1.0);
      return detail::grow_tree(data, rows, weights, detail::TreeOptions{});
    }
    case ClassifierKind::KNN:
      return detail::train_knn(data, rows, spec.k);
    case ClassifierKind::NaiveBayes:
      return detail::train_naive_bayes(data, rows);
    case ClassifierKind::RandomForest:
    case ClassifierKind::Bagging:
      return detail::train_ensemble(spec, data, rows);
  }
  throw DataError("unknown classifier kind");
}

nlohmann::ordered_json save_model(const Model& model, const ClassifierSpec& spec,
                                  std::span<const std::string> feature_names) {
  if (model.kind() != spec.kind) throw DataError("model kind does not match its spec");
  nlohmann::ordered_json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["spec"] = to_json(spec);
  j["features"] = std::vector<std::string>(feature_names.begin(), feature_names.end());
  j["model"] = model.to_json();
  return j;
}

LoadedModel load_model(const nlohmann::json& document) {
  try {
    if (document.value("format", std::string{}) != kModelFormat) {
      throw DataError("not a lifegraph model document");
    }
    if (document.at("version").get<int>() != kModelVersion) {
      throw DataError("unsupported model version " + document.at("version").dump());
    }
    LoadedModel out;
    out.spec = spec_from_json(document.at("spec"));
    out.feature_names = document.at("features").get<std::vector<std::string>>();
    const auto& body = document.at("model");
    switch (out.spec.kind) {
      case ClassifierKind::OneR:
        out.model = detail::OneRModel::from_json(body);
        break;
      case ClassifierKind::C45Tree:
        out.model = detail::TreeModel::from_json(body);
        break;
      case ClassifierKind::KNN:
        out.model = detail::KnnModel::from_json(body);
        break;
      case ClassifierKind::NaiveBayes:
        out.model = detail::NaiveBayesModel::from_json(body);
        break;
      case ClassifierKind::RandomForest:
      case ClassifierKind::Bagging:
        out.model = detail::EnsembleModel::from_json(body, out.spec.kind);
        break;
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model document: ") + e.what());
  }
}

namespace detail {

nlohmann::ordered_json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

double number_from(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

}  // namespace detail
}  // namespace lifegraph
