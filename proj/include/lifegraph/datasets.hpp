#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lifegraph/country.hpp"
#include "lifegraph/features.hpp"
#include "lifegraph/profile.hpp"

namespace lifegraph {

/// Row predicates defining a dataset. Every dataset also requires
/// age_of_death to be present.
struct DatasetSpec {
  std::optional<Country> country;  // matched against birth_country
  std::optional<Gender> gender;
  std::optional<double> min_age_of_death;
  bool require_married = false;
  std::optional<Feature> require_feature_present;
  /// Every column of the table present and gender known.
  bool require_no_missing = false;
  std::optional<int> max_birth_year;

  friend bool operator==(const DatasetSpec&, const DatasetSpec&) = default;
};

/// Human-readable predicate list, e.g. "age_of_death present; birth_country=UnitedStates".
std::string describe(const DatasetSpec& spec);

struct NamedDataset {
  std::string name;
  DatasetSpec spec;
};

/// Fixed named datasets (all, all-10, us-50, married, no-missing-10, ...).
/// Feature datasets "<feature>-10" are accepted by dataset_by_name but not
/// enumerated here.
const std::vector<NamedDataset>& named_datasets();

/// Resolves a named dataset, including "<feature>-10" / "<feature>-50" for
/// any numeric feature in snake_case or kebab-case. nullopt if unknown.
std::optional<DatasetSpec> dataset_by_name(std::string_view name);

/// Rows of `table` satisfying every active predicate, order preserved.
/// Throws DataError when a predicate needs a column the table lacks.
FeatureTable filter_dataset(const FeatureTable& table, const DatasetSpec& spec);

/// Applies the row predicates to `table`, projects to `set`, and evaluates
/// require_no_missing over the projected columns.
FeatureTable materialize(const FeatureTable& table, const DatasetSpec& spec, FeatureSet set);

}  // namespace lifegraph
