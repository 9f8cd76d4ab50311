#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lifegraph/country.hpp"
#include "lifegraph/graph.hpp"

namespace lifegraph {

/// The 21 per-vertex features, in canonical order.
enum class Feature : unsigned char {
  FullName,
  BirthYear,
  DeathYear,
  Gender,
  BirthCountry,
  DeathCountry,
  AgeOfDeath,
  ChildrenNumber,
  SpouseNumber,
  MinSpouseAgeOfDeath,
  MaxSpouseAgeOfDeath,
  AvgSpouseAgeOfDeath,
  FatherAgeOfDeath,
  MotherAgeOfDeath,
  PaternalGrandfatherAgeOfDeath,
  MaternalGrandfatherAgeOfDeath,
  PaternalGrandmotherAgeOfDeath,
  MaternalGrandmotherAgeOfDeath,
  SiblingNumber,
  MaxSiblingAgeOfDeath,
  AvgSiblingAgeOfDeath,
};

inline constexpr std::size_t kFeatureCount = 21;

std::span<const Feature> all_features() noexcept;

/// snake_case column name, e.g. "max_sibling_age_of_death".
std::string_view feature_name(Feature f) noexcept;

/// Accepts snake_case or kebab-case names.
std::optional<Feature> parse_feature(std::string_view name);

bool is_numeric(Feature f) noexcept;

/// Spouse and sibling min/max/avg features.
bool is_aggregate(Feature f) noexcept;

enum class FeatureSet { AllNumeric, Heritage, NuclearFamily, Full };

std::string_view feature_set_name(FeatureSet s) noexcept;
std::optional<FeatureSet> parse_feature_set(std::string_view name);

/// Columns of a set in canonical order.
std::span<const Feature> feature_set_columns(FeatureSet s) noexcept;

struct FeatureVector {
  std::string full_name;
  std::optional<int> birth_year;
  std::optional<int> death_year;
  int gender_code = 0;
  std::optional<Country> birth_country;
  std::optional<Country> death_country;
  std::optional<double> age_of_death;
  int children_number = 0;
  int spouse_number = 0;
  std::optional<double> min_spouse_age_of_death;
  std::optional<double> max_spouse_age_of_death;
  std::optional<double> avg_spouse_age_of_death;
  std::optional<double> father_age_of_death;
  std::optional<double> mother_age_of_death;
  std::optional<double> paternal_grandfather_age_of_death;
  std::optional<double> maternal_grandfather_age_of_death;
  std::optional<double> paternal_grandmother_age_of_death;
  std::optional<double> maternal_grandmother_age_of_death;
  int sibling_number = 0;
  std::optional<double> max_sibling_age_of_death;
  std::optional<double> avg_sibling_age_of_death;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Numeric view of a feature; nullopt for missing values and for the
/// non-numeric features (name, countries). Gender yields its code,
/// including 0 for unknown.
std::optional<double> numeric_value(const FeatureVector& fv, Feature f);

/// True when the feature carries a value (non-empty name, present optional).
bool has_value(const FeatureVector& fv, Feature f);

/// Lifespan in years; nullopt when either date is missing or the value lies
/// outside [0, 122].
std::optional<double> age_of_death(const Multigraph& g, VertexIndex v);

struct NuclearFeatures {
  int children_number = 0;
  int spouse_number = 0;
  std::optional<double> min_spouse_age_of_death;
  std::optional<double> max_spouse_age_of_death;
  std::optional<double> avg_spouse_age_of_death;
};

struct ExtendedFeatures {
  std::optional<double> father_age_of_death;
  std::optional<double> mother_age_of_death;
  std::optional<double> paternal_grandfather_age_of_death;
  std::optional<double> maternal_grandfather_age_of_death;
  std::optional<double> paternal_grandmother_age_of_death;
  std::optional<double> maternal_grandmother_age_of_death;
  int sibling_number = 0;
  std::optional<double> max_sibling_age_of_death;
  std::optional<double> avg_sibling_age_of_death;
  /// Set when v has more than one male or more than one female parent.
  bool ambiguous_parents = false;
};

NuclearFeatures nuclear_features(const Multigraph& g, VertexIndex v);
ExtendedFeatures extended_features(const Multigraph& g, VertexIndex v);
FeatureVector feature_vector(const Multigraph& g, VertexIndex v);

struct FeatureRow {
  std::string id;
  FeatureVector features;

  friend bool operator==(const FeatureRow&, const FeatureRow&) = default;
};

/// Rows of feature vectors plus the set naming which columns are present.
/// Every row also carries age_of_death, the analysis target, whatever the set.
class FeatureTable {
 public:
  FeatureTable() = default;
  explicit FeatureTable(FeatureSet set) : set_(set) {}

  FeatureSet set() const noexcept { return set_; }
  std::span<const Feature> columns() const noexcept { return feature_set_columns(set_); }
  bool has_column(Feature f) const noexcept;

  std::vector<FeatureRow>& rows() noexcept { return rows_; }
  const std::vector<FeatureRow>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  std::vector<std::string>& diagnostics() noexcept { return diagnostics_; }
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

  /// Same rows, restricted to the columns of `set`; throws DataError when
  /// `set` needs a column this table lacks.
  FeatureTable project(FeatureSet set) const;

  friend bool operator==(const FeatureTable&, const FeatureTable&) = default;

 private:
  FeatureSet set_ = FeatureSet::Full;
  std::vector<FeatureRow> rows_;
  std::vector<std::string> diagnostics_;
};

/// One row per non-placeholder vertex, ordered by id. `threads` = 0 uses
/// the hardware concurrency.
FeatureTable feature_matrix(const Multigraph& g, FeatureSet set, unsigned threads = 0);

struct FeatureCsvOptions {
  /// Write 0 for absent spouse/sibling aggregates instead of an empty cell.
  bool zero_fill_aggregates = false;
};

/// Header: id, the set's columns, then age_of_death when the set does not
/// already include it. Empty cell = missing.
void write_feature_csv(std::ostream& out, const FeatureTable& table,
                       const FeatureCsvOptions& options = {});

/// JSON array of row objects; missing values are null.
void write_feature_json(std::ostream& out, const FeatureTable& table,
                        const FeatureCsvOptions& options = {});

/// Inverse of write_feature_csv. The column set is recognised from the header.
FeatureTable read_feature_csv(std::istream& in);

}  // namespace lifegraph
