#include "lifegraph/learn/labeled_table.hpp"

#include <algorithm>
#include <limits>

#include "lifegraph/error.hpp"

namespace lifegraph {

std::size_t LabeledTable::positives() const noexcept {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), std::uint8_t{1}));
}

void LabeledTable::add_row(std::span<const double> x, bool positive) {
  if (x.size() != cols()) throw DataError("row width does not match the table");
  values.insert(values.end(), x.begin(), x.end());
  labels.push_back(positive ? 1 : 0);
}

std::vector<Feature> classifier_predictors() {
  std::vector<Feature> out;
  for (Feature f : feature_set_columns(FeatureSet::AllNumeric)) {
    if (f != Feature::AgeOfDeath) out.push_back(f);
  }
  return out;
}

LabeledTable make_labeled_table(const FeatureTable& table, double threshold) {
  const auto predictors = classifier_predictors();
  for (Feature f : predictors) {
    if (!table.has_column(f)) {
      throw DataError("classification needs column '" + std::string(feature_name(f)) + "'");
    }
  }
  LabeledTable out;
  for (Feature f : predictors) out.feature_names.emplace_back(feature_name(f));
  out.values.reserve(table.size() * predictors.size());
  out.labels.reserve(table.size());
  constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x(predictors.size());
  for (const auto& row : table.rows()) {
    if (!row.features.age_of_death) {
      throw DataError("row '" + row.id + "' has no age_of_death to label");
    }
    for (std::size_t j = 0; j < predictors.size(); ++j) {
      const Feature f = predictors[j];
      if (f == Feature::Gender && row.features.gender_code == 0) {
        x[j] = kMissing;
      } else {
        x[j] = numeric_value(row.features, f).value_or(kMissing);
      }
    }
    out.add_row(x, *row.features.age_of_death >= threshold);
  }
  return out;
}

}  // namespace lifegraph
