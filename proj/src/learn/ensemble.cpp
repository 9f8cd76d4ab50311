#include <cmath>

#include "lifegraph/error.hpp"
#include "lifegraph/random.hpp"
#include "models.hpp"

namespace lifegraph::detail {

double EnsembleModel::score(std::span<const double> row) const {
  if (trees.empty()) throw Error("empty ensemble");
  double sum = 0.0;
  for (const auto& t : trees) sum += t->score(row);
  return sum / static_cast<double>(trees.size());
}

nlohmann::ordered_json EnsembleModel::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& t : trees) arr.push_back(t->to_json());
  return {{"trees", arr}};
}

std::unique_ptr<EnsembleModel> EnsembleModel::from_json(const nlohmann::json& j, ClassifierKind kind) {
  auto m = std::make_unique<EnsembleModel>();
  m->reported_kind = kind;
  for (const auto& t : j.at("trees")) m->trees.push_back(TreeModel::from_json(t));
  if (m->trees.empty()) throw DataError("ensemble model has no trees");
  return m;
}

std::unique_ptr<EnsembleModel> train_ensemble(const ClassifierSpec& spec, const LabeledTable& data,
                                              std::span<const std::size_t> rows) {
  if (rows.empty()) throw InsufficientDataError("an ensemble needs at least one training row");
  auto m = std::make_unique<EnsembleModel>();
  m->reported_kind = spec.kind;

  TreeOptions options;
  if (spec.kind == ClassifierKind::RandomForest) {
    const auto p = static_cast<double>(data.cols());
    options.features_per_split = spec.split_candidates
                                     ? static_cast<std::size_t>(*spec.split_candidates)
                                     : static_cast<std::size_t>(std::ceil(std::sqrt(p)));
  }

  const std::size_t n = rows.size();
  std::vector<double> weights(n);
  for (int t = 0; t < spec.tree_count; ++t) {
    const std::uint64_t tree_seed = derive_seed(spec.seed, static_cast<std::uint64_t>(t));
    if (spec.bootstrap) {
      std::fill(weights.begin(), weights.end(), 0.0);
      Rng rng(derive_seed(tree_seed, 0));
      for (std::size_t i = 0; i < n; ++i) weights[rng.below(n)] += 1.0;
    } else {
      std::fill(weights.begin(), weights.end(), 1.0);
    }
    options.seed = derive_seed(tree_seed, 1);
    auto tree = grow_tree(data, rows, weights, options);
    tree->reported_kind = spec.kind;
    m->trees.push_back(std::move(tree));
  }
  return m;
}

}  // namespace lifegraph::detail
