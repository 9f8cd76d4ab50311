#include "lifegraph/datasets.hpp"

#include <algorithm>

#include "lifegraph/csv.hpp"
#include "lifegraph/error.hpp"

namespace lifegraph {
namespace {

void require_column(const FeatureTable& t, Feature f, std::string_view predicate) {
  if (!t.has_column(f)) {
    throw DataError("dataset predicate '" + std::string(predicate) + "' needs column '" +
                    std::string(feature_name(f)) + "', absent from the '" +
                    std::string(feature_set_name(t.set())) + "' table");
  }
}

bool row_complete(const FeatureTable& t, const FeatureVector& fv) {
  for (Feature f : t.columns()) {
    if (!has_value(fv, f)) return false;
  }
  return !t.has_column(Feature::Gender) || fv.gender_code != 0;
}

DatasetSpec with_min_age(DatasetSpec spec, double age) {
  spec.min_age_of_death = age;
  return spec;
}

std::vector<NamedDataset> build_named() {
  std::vector<NamedDataset> out;
  auto add_age_variants = [&](const std::string& base, const DatasetSpec& spec, bool plain) {
    if (plain) out.push_back({base, spec});
    out.push_back({base + "-10", with_min_age(spec, 10)});
    out.push_back({base + "-50", with_min_age(spec, 50)});
  };
  DatasetSpec all;
  add_age_variants("all", all, true);

  DatasetSpec us;
  us.country = Country::UnitedStates;
  add_age_variants("us", us, true);

  for (auto [label, gender] : {std::pair{"male", Gender::Male}, std::pair{"female", Gender::Female}}) {
    DatasetSpec g;
    g.gender = gender;
    add_age_variants(label, g, false);
    g.country = Country::UnitedStates;
    add_age_variants(std::string(label) + "-us", g, false);
  }

  DatasetSpec married;
  married.require_married = true;
  add_age_variants("married", married, true);

  DatasetSpec children;
  children.require_feature_present = Feature::ChildrenNumber;
  out.push_back({"children-number-50", with_min_age(children, 50)});
  children.gender = Gender::Male;
  out.push_back({"male-children-number-50", with_min_age(children, 50)});
  children.gender = Gender::Female;
  out.push_back({"female-children-number-50", with_min_age(children, 50)});

  DatasetSpec complete;
  complete.require_no_missing = true;
  complete.max_birth_year = 1900;
  out.push_back({"no-missing-10", with_min_age(complete, 10)});
  out.push_back({"no-missing-50", with_min_age(complete, 50)});
  return out;
}

}  // namespace

std::string describe(const DatasetSpec& spec) {
  std::string out = "age_of_death present";
  auto add = [&](const std::string& s) {
    out += "; ";
    out += s;
  };
  if (spec.country) add("birth_country=" + std::string(country_tag(*spec.country)));
  if (spec.gender) add("gender=" + std::string(gender_name(*spec.gender)));
  if (spec.min_age_of_death) add("age_of_death>=" + format_number(*spec.min_age_of_death));
  if (spec.require_married) add("spouse_number>=1");
  if (spec.require_feature_present) {
    add(std::string(feature_name(*spec.require_feature_present)) + " present");
  }
  if (spec.require_no_missing) add("no missing column, gender known");
  if (spec.max_birth_year) add("birth_year<=" + std::to_string(*spec.max_birth_year));
  return out;
}

const std::vector<NamedDataset>& named_datasets() {
  static const std::vector<NamedDataset> datasets = build_named();
  return datasets;
}

std::optional<DatasetSpec> dataset_by_name(std::string_view name) {
  for (const auto& d : named_datasets()) {
    if (d.name == name) return d.spec;
  }
  for (double age : {10.0, 50.0}) {
    const std::string suffix = age == 10.0 ? "-10" : "-50";
    if (name.size() <= suffix.size() || !name.ends_with(suffix)) continue;
    auto f = parse_feature(name.substr(0, name.size() - suffix.size()));
    if (!f || !is_numeric(*f) || *f == Feature::AgeOfDeath) continue;
    DatasetSpec spec;
    spec.require_feature_present = *f;
    spec.min_age_of_death = age;
    return spec;
  }
  return std::nullopt;
}

FeatureTable filter_dataset(const FeatureTable& table, const DatasetSpec& spec) {
  if (spec.country) require_column(table, Feature::BirthCountry, "country");
  if (spec.gender) require_column(table, Feature::Gender, "gender");
  if (spec.require_married) require_column(table, Feature::SpouseNumber, "married");
  if (spec.require_feature_present) {
    require_column(table, *spec.require_feature_present, "feature present");
  }
  if (spec.max_birth_year) require_column(table, Feature::BirthYear, "max birth year");

  FeatureTable out(table.set());
  out.diagnostics() = table.diagnostics();
  for (const auto& row : table.rows()) {
    const auto& fv = row.features;
    if (!fv.age_of_death) continue;
    if (spec.country && fv.birth_country != spec.country) continue;
    if (spec.gender && fv.gender_code != gender_code(*spec.gender)) continue;
    if (spec.min_age_of_death && *fv.age_of_death < *spec.min_age_of_death) continue;
    if (spec.require_married && fv.spouse_number < 1) continue;
    if (spec.require_feature_present && !has_value(fv, *spec.require_feature_present)) continue;
    if (spec.max_birth_year && (!fv.birth_year || *fv.birth_year > *spec.max_birth_year)) continue;
    if (spec.require_no_missing && !row_complete(table, fv)) continue;
    out.rows().push_back(row);
  }
  return out;
}

FeatureTable materialize(const FeatureTable& table, const DatasetSpec& spec, FeatureSet set) {
  DatasetSpec rows_only = spec;
  rows_only.require_no_missing = false;
  FeatureTable projected = filter_dataset(table, rows_only).project(set);
  if (!spec.require_no_missing) return projected;
  DatasetSpec complete;
  complete.require_no_missing = true;
  return filter_dataset(projected, complete);
}

}  // namespace lifegraph
