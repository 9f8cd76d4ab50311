#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lifegraph/features.hpp"

namespace lifegraph {

inline constexpr double kLongevityAge = 80.0;

/// Dense numeric predictor matrix with a binary target. Missing values are
/// NaN. Label 1 is the positive class.
struct LabeledTable {
  std::vector<std::string> feature_names;
  std::vector<double> values;  // row-major
  std::vector<std::uint8_t> labels;

  std::size_t rows() const noexcept { return labels.size(); }
  std::size_t cols() const noexcept { return feature_names.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * cols(), cols()};
  }
  std::size_t positives() const noexcept;

  /// Appends a row; `x` must have cols() entries.
  void add_row(std::span<const double> x, bool positive);
};

/// The predictors used for classification: every numeric feature except
/// age_of_death and death_year.
std::vector<Feature> classifier_predictors();

/// Builds the classification table from a feature table holding the
/// predictor columns. Unknown gender becomes missing. Label: age_of_death >=
/// threshold. Rows without age_of_death raise DataError.
LabeledTable make_labeled_table(const FeatureTable& table, double threshold = kLongevityAge);

}  // namespace lifegraph
