#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lifegraph/datasets.hpp"
#include "lifegraph/features.hpp"
#include "lifegraph/regress.hpp"

namespace lifegraph {

/// Simple regression of age_of_death on one feature over the rows where
/// both are present.
SimpleFit regress_age_on(const FeatureTable& table, Feature x);

struct SweepEntry {
  Feature feature;
  std::string dataset;
};

/// The standard single-feature sweep: each extended-family feature on its
/// "<feature>-10" dataset, the spouse aggregates on "married", and
/// children_number on the three children-number-50 datasets.
std::vector<SweepEntry> simple_regression_sweep();

struct SweepResult {
  Feature feature;
  std::string dataset;
  std::size_t n = 0;
  std::optional<SimpleFit> fit;  // absent when the regression is undefined
  std::string error;
};

/// Runs `entries` against a Full feature table.
std::vector<SweepResult> run_simple_sweep(const FeatureTable& full,
                                          const std::vector<SweepEntry>& entries,
                                          unsigned threads = 0);

/// Dataset used by default for a stepwise model of `set`: no-missing-50 for
/// the nuclear-family set, no-missing-10 otherwise.
std::string default_stepwise_dataset(FeatureSet set);

/// Predictors of a set: its numeric columns except age_of_death.
std::vector<Feature> stepwise_predictors(FeatureSet set);

/// Materializes `dataset` for `set` and runs backward elimination of
/// age_of_death on the set's predictors. With drop_aliased, predictors that
/// make the design rank deficient are removed and listed in
/// StepwiseResult::aliased instead of raising RankDeficientError.
StepwiseResult stepwise_for_set(const FeatureTable& full, FeatureSet set,
                                const DatasetSpec& dataset, double alpha_out = 0.05,
                                bool drop_aliased = false);

}  // namespace lifegraph
