#include "lifegraph/analysis.hpp"

#include "lifegraph/error.hpp"
#include "lifegraph/parallel.hpp"

namespace lifegraph {

SimpleFit regress_age_on(const FeatureTable& table, Feature x) {
  if (!table.has_column(x)) {
    throw DataError("column '" + std::string(feature_name(x)) + "' absent from table");
  }
  if (!is_numeric(x)) throw DataError("'" + std::string(feature_name(x)) + "' is not numeric");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : table.rows()) {
    const auto xv = numeric_value(row.features, x);
    if (!xv || !row.features.age_of_death) continue;
    xs.push_back(*xv);
    ys.push_back(*row.features.age_of_death);
  }
  return simple_ols(xs, ys);
}

std::vector<SweepEntry> simple_regression_sweep() {
  std::vector<SweepEntry> out;
  for (Feature f : feature_set_columns(FeatureSet::Heritage)) {
    if (f == Feature::BirthYear || f == Feature::Gender) continue;
    out.push_back({f, std::string(feature_name(f)) + "-10"});
  }
  for (Feature f : {Feature::AvgSpouseAgeOfDeath, Feature::MaxSpouseAgeOfDeath,
                    Feature::MinSpouseAgeOfDeath}) {
    out.push_back({f, "married"});
  }
  for (const char* d : {"children-number-50", "male-children-number-50", "female-children-number-50"}) {
    out.push_back({Feature::ChildrenNumber, d});
  }
  return out;
}

std::vector<SweepResult> run_simple_sweep(const FeatureTable& full,
                                          const std::vector<SweepEntry>& entries,
                                          unsigned threads) {
  std::vector<SweepResult> results(entries.size());
  parallel_for(entries.size(), threads, [&](std::size_t i) {
    auto& r = results[i];
    r.feature = entries[i].feature;
    r.dataset = entries[i].dataset;
    const auto spec = dataset_by_name(entries[i].dataset);
    if (!spec) {
      r.error = "unknown dataset '" + entries[i].dataset + "'";
      return;
    }
    const FeatureTable subset = filter_dataset(full, *spec);
    for (const auto& row : subset.rows()) {
      if (numeric_value(row.features, r.feature)) ++r.n;
    }
    try {
      r.fit = regress_age_on(subset, r.feature);
    } catch (const DataError& e) {
      r.error = e.what();
    }
  });
  return results;
}

std::string default_stepwise_dataset(FeatureSet set) {
  return set == FeatureSet::NuclearFamily ? "no-missing-50" : "no-missing-10";
}

std::vector<Feature> stepwise_predictors(FeatureSet set) {
  std::vector<Feature> out;
  for (Feature f : feature_set_columns(set)) {
    if (is_numeric(f) && f != Feature::AgeOfDeath && f != Feature::DeathYear) out.push_back(f);
  }
  return out;
}

StepwiseResult stepwise_for_set(const FeatureTable& full, FeatureSet set,
                                const DatasetSpec& dataset, double alpha_out, bool drop_aliased) {
  const FeatureTable table = materialize(full, dataset, set);
  const auto features = stepwise_predictors(set);
  std::vector<Predictor> predictors(features.size());
  for (std::size_t j = 0; j < features.size(); ++j) {
    predictors[j].name = std::string(feature_name(features[j]));
  }
  std::vector<double> y;
  for (const auto& row : table.rows()) {
    std::vector<double> values;
    values.reserve(features.size());
    for (Feature f : features) {
      const auto v = numeric_value(row.features, f);
      if (!v) break;
      values.push_back(*v);
    }
    // Complete cases only; datasets without the no-missing predicate may
    // still hold gaps.
    if (values.size() != features.size() || !row.features.age_of_death) continue;
    for (std::size_t j = 0; j < features.size(); ++j) predictors[j].values.push_back(values[j]);
    y.push_back(*row.features.age_of_death);
  }
  std::vector<std::string> aliased;
  while (true) {
    try {
      auto result = backward_stepwise(predictors, y, alpha_out);
      result.aliased = std::move(aliased);
      return result;
    } catch (const RankDeficientError& e) {
      if (!drop_aliased || e.columns().empty()) throw;
      for (const auto& name : e.columns()) {
        std::erase_if(predictors, [&](const Predictor& p) { return p.name == name; });
        aliased.push_back(name);
      }
    }
  }
}

}  // namespace lifegraph
