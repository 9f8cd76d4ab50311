#include "lifegraph/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "lifegraph/error.hpp"
#include "lifegraph/parallel.hpp"

namespace lifegraph {
namespace {

using F = Feature;

constexpr std::array<Feature, kFeatureCount> kAll = {
    F::FullName,
    F::BirthYear,
    F::DeathYear,
    F::Gender,
    F::BirthCountry,
    F::DeathCountry,
    F::AgeOfDeath,
    F::ChildrenNumber,
    F::SpouseNumber,
    F::MinSpouseAgeOfDeath,
    F::MaxSpouseAgeOfDeath,
    F::AvgSpouseAgeOfDeath,
    F::FatherAgeOfDeath,
    F::MotherAgeOfDeath,
    F::PaternalGrandfatherAgeOfDeath,
    F::MaternalGrandfatherAgeOfDeath,
    F::PaternalGrandmotherAgeOfDeath,
    F::MaternalGrandmotherAgeOfDeath,
    F::SiblingNumber,
    F::MaxSiblingAgeOfDeath,
    F::AvgSiblingAgeOfDeath,
};

constexpr std::array<std::string_view, kFeatureCount> kNames = {
    "full_name",
    "birth_year",
    "death_year",
    "gender",
    "birth_country",
    "death_country",
    "age_of_death",
    "children_number",
    "spouse_number",
    "min_spouse_age_of_death",
    "max_spouse_age_of_death",
    "avg_spouse_age_of_death",
    "father_age_of_death",
    "mother_age_of_death",
    "paternal_grandfather_age_of_death",
    "maternal_grandfather_age_of_death",
    "paternal_grandmother_age_of_death",
    "maternal_grandmother_age_of_death",
    "sibling_number",
    "max_sibling_age_of_death",
    "avg_sibling_age_of_death",
};

constexpr std::array kAllNumeric = {
    F::BirthYear,
    F::Gender,
    F::AgeOfDeath,
    F::ChildrenNumber,
    F::SpouseNumber,
    F::MinSpouseAgeOfDeath,
    F::MaxSpouseAgeOfDeath,
    F::AvgSpouseAgeOfDeath,
    F::FatherAgeOfDeath,
    F::MotherAgeOfDeath,
    F::PaternalGrandfatherAgeOfDeath,
    F::MaternalGrandfatherAgeOfDeath,
    F::PaternalGrandmotherAgeOfDeath,
    F::MaternalGrandmotherAgeOfDeath,
    F::SiblingNumber,
    F::MaxSiblingAgeOfDeath,
    F::AvgSiblingAgeOfDeath,
};

constexpr std::array kHeritage = {
    F::BirthYear,
    F::Gender,
    F::FatherAgeOfDeath,
    F::MotherAgeOfDeath,
    F::PaternalGrandfatherAgeOfDeath,
    F::MaternalGrandfatherAgeOfDeath,
    F::PaternalGrandmotherAgeOfDeath,
    F::MaternalGrandmotherAgeOfDeath,
    F::SiblingNumber,
    F::MaxSiblingAgeOfDeath,
    F::AvgSiblingAgeOfDeath,
};

constexpr std::array kNuclear = {
    F::BirthYear,
    F::Gender,
    F::ChildrenNumber,
    F::SpouseNumber,
    F::MinSpouseAgeOfDeath,
    F::MaxSpouseAgeOfDeath,
    F::AvgSpouseAgeOfDeath,
};

std::optional<double> checked_age(const Vertex& vertex) {
  auto age = lifespan_years(vertex.birth, vertex.death);
  if (!age || *age < 0.0 || *age > kMaxAgeYears) return std::nullopt;
  return age;
}

struct Aggregate {
  std::optional<double> min, max, avg;
};

template <typename AgeFn>
Aggregate aggregate_ages(std::span<const VertexIndex> people, const AgeFn& age) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  std::size_t count = 0;
  for (VertexIndex p : people) {
    if (auto a = age(p)) {
      lo = std::min(lo, *a);
      hi = std::max(hi, *a);
      sum += *a;
      ++count;
    }
  }
  if (count == 0) return {};
  return {lo, hi, sum / static_cast<double>(count)};
}

struct Parents {
  std::optional<VertexIndex> father;
  std::optional<VertexIndex> mother;
  bool ambiguous = false;
};

Parents parents_by_gender(const Multigraph& g, VertexIndex v) {
  Parents out;
  int fathers = 0;
  int mothers = 0;
  for (VertexIndex p : g.parents_of(v)) {
    switch (g.vertex(p).gender) {
      case Gender::Male:
        if (++fathers == 1) out.father = p;
        break;
      case Gender::Female:
        if (++mothers == 1) out.mother = p;
        break;
      case Gender::Unknown:
        break;
    }
  }
  if (fathers > 1) out.father.reset();
  if (mothers > 1) out.mother.reset();
  out.ambiguous = fathers > 1 || mothers > 1;
  return out;
}

template <typename AgeFn>
NuclearFeatures nuclear_with(const Multigraph& g, VertexIndex v, const AgeFn& age) {
  NuclearFeatures out;
  const auto spouses = g.spouses_of(v);
  out.children_number = static_cast<int>(g.children_of(v).size());
  out.spouse_number = static_cast<int>(spouses.size());
  const auto agg = aggregate_ages(spouses, age);
  out.min_spouse_age_of_death = agg.min;
  out.max_spouse_age_of_death = agg.max;
  out.avg_spouse_age_of_death = agg.avg;
  return out;
}

template <typename AgeFn>
ExtendedFeatures extended_with(const Multigraph& g, VertexIndex v, const AgeFn& age) {
  ExtendedFeatures out;
  const Parents parents = parents_by_gender(g, v);
  out.ambiguous_parents = parents.ambiguous;
  auto age_of = [&](std::optional<VertexIndex> p) -> std::optional<double> {
    return p ? age(*p) : std::nullopt;
  };
  out.father_age_of_death = age_of(parents.father);
  out.mother_age_of_death = age_of(parents.mother);
  if (parents.father) {
    const Parents pp = parents_by_gender(g, *parents.father);
    out.paternal_grandfather_age_of_death = age_of(pp.father);
    out.paternal_grandmother_age_of_death = age_of(pp.mother);
  }
  if (parents.mother) {
    const Parents mp = parents_by_gender(g, *parents.mother);
    out.maternal_grandfather_age_of_death = age_of(mp.father);
    out.maternal_grandmother_age_of_death = age_of(mp.mother);
  }
  const auto siblings = g.siblings_of(v);
  out.sibling_number = static_cast<int>(siblings.size());
  const auto agg = aggregate_ages(siblings, age);
  out.max_sibling_age_of_death = agg.max;
  out.avg_sibling_age_of_death = agg.avg;
  return out;
}

template <typename AgeFn>
FeatureVector vector_with(const Multigraph& g, VertexIndex v, const AgeFn& age,
                          bool* ambiguous) {
  const Vertex& vertex = g.vertex(v);
  FeatureVector fv;
  fv.full_name = vertex.full_name;
  if (vertex.birth) fv.birth_year = vertex.birth->year;
  if (vertex.death) fv.death_year = vertex.death->year;
  fv.gender_code = gender_code(vertex.gender);
  if (vertex.birth_location) fv.birth_country = normalize_country(*vertex.birth_location);
  if (vertex.death_location) fv.death_country = normalize_country(*vertex.death_location);
  fv.age_of_death = age(v);

  const auto nuclear = nuclear_with(g, v, age);
  fv.children_number = nuclear.children_number;
  fv.spouse_number = nuclear.spouse_number;
  fv.min_spouse_age_of_death = nuclear.min_spouse_age_of_death;
  fv.max_spouse_age_of_death = nuclear.max_spouse_age_of_death;
  fv.avg_spouse_age_of_death = nuclear.avg_spouse_age_of_death;

  const auto ext = extended_with(g, v, age);
  fv.father_age_of_death = ext.father_age_of_death;
  fv.mother_age_of_death = ext.mother_age_of_death;
  fv.paternal_grandfather_age_of_death = ext.paternal_grandfather_age_of_death;
  fv.maternal_grandfather_age_of_death = ext.maternal_grandfather_age_of_death;
  fv.paternal_grandmother_age_of_death = ext.paternal_grandmother_age_of_death;
  fv.maternal_grandmother_age_of_death = ext.maternal_grandmother_age_of_death;
  fv.sibling_number = ext.sibling_number;
  fv.max_sibling_age_of_death = ext.max_sibling_age_of_death;
  fv.avg_sibling_age_of_death = ext.avg_sibling_age_of_death;
  if (ambiguous) *ambiguous = ext.ambiguous_parents;
  return fv;
}

auto direct_age(const Multigraph& g) {
  return [&g](VertexIndex v) { return checked_age(g.vertex(v)); };
}

std::string kebab_to_snake(std::string_view name) {
  std::string out(name);
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

}  // namespace

std::span<const Feature> all_features() noexcept { return kAll; }

std::string_view feature_name(Feature f) noexcept {
  return kNames[static_cast<std::size_t>(f)];
}

std::optional<Feature> parse_feature(std::string_view name) {
  const std::string snake = kebab_to_snake(name);
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (kNames[i] == snake) return kAll[i];
  }
  return std::nullopt;
}

bool is_numeric(Feature f) noexcept {
  return f != F::FullName && f != F::BirthCountry && f != F::DeathCountry;
}

bool is_aggregate(Feature f) noexcept {
  switch (f) {
    case F::MinSpouseAgeOfDeath:
    case F::MaxSpouseAgeOfDeath:
    case F::AvgSpouseAgeOfDeath:
    case F::MaxSiblingAgeOfDeath:
    case F::AvgSiblingAgeOfDeath:
      return true;
    default:
      return false;
  }
}

std::string_view feature_set_name(FeatureSet s) noexcept {
  switch (s) {
    case FeatureSet::AllNumeric:
      return "all-numeric";
    case FeatureSet::Heritage:
      return "heritage";
    case FeatureSet::NuclearFamily:
      return "nuclear";
    case FeatureSet::Full:
      return "full";
  }
  return "?";
}

std::optional<FeatureSet> parse_feature_set(std::string_view name) {
  for (auto s : {FeatureSet::AllNumeric, FeatureSet::Heritage, FeatureSet::NuclearFamily,
                 FeatureSet::Full}) {
    if (feature_set_name(s) == name) return s;
  }
  if (name == "nuclear-family") return FeatureSet::NuclearFamily;
  return std::nullopt;
}

std::span<const Feature> feature_set_columns(FeatureSet s) noexcept {
  switch (s) {
    case FeatureSet::AllNumeric:
      return kAllNumeric;
    case FeatureSet::Heritage:
      return kHeritage;
    case FeatureSet::NuclearFamily:
      return kNuclear;
    case FeatureSet::Full:
      return kAll;
  }
  return {};
}

std::optional<double> numeric_value(const FeatureVector& fv, Feature f) {
  auto from_int = [](const std::optional<int>& v) -> std::optional<double> {
    if (v) return static_cast<double>(*v);
    return std::nullopt;
  };
  switch (f) {
    case F::FullName:
    case F::BirthCountry:
    case F::DeathCountry:
      return std::nullopt;
    case F::BirthYear:
      return from_int(fv.birth_year);
    case F::DeathYear:
      return from_int(fv.death_year);
    case F::Gender:
      return static_cast<double>(fv.gender_code);
    case F::AgeOfDeath:
      return fv.age_of_death;
    case F::ChildrenNumber:
      return static_cast<double>(fv.children_number);
    case F::SpouseNumber:
      return static_cast<double>(fv.spouse_number);
    case F::MinSpouseAgeOfDeath:
      return fv.min_spouse_age_of_death;
    case F::MaxSpouseAgeOfDeath:
      return fv.max_spouse_age_of_death;
    case F::AvgSpouseAgeOfDeath:
      return fv.avg_spouse_age_of_death;
    case F::FatherAgeOfDeath:
      return fv.father_age_of_death;
    case F::MotherAgeOfDeath:
      return fv.mother_age_of_death;
    case F::PaternalGrandfatherAgeOfDeath:
      return fv.paternal_grandfather_age_of_death;
    case F::MaternalGrandfatherAgeOfDeath:
      return fv.maternal_grandfather_age_of_death;
    case F::PaternalGrandmotherAgeOfDeath:
      return fv.paternal_grandmother_age_of_death;
    case F::MaternalGrandmotherAgeOfDeath:
      return fv.maternal_grandmother_age_of_death;
    case F::SiblingNumber:
      return static_cast<double>(fv.sibling_number);
    case F::MaxSiblingAgeOfDeath:
      return fv.max_sibling_age_of_death;
    case F::AvgSiblingAgeOfDeath:
      return fv.avg_sibling_age_of_death;
  }
  return std::nullopt;
}

bool has_value(const FeatureVector& fv, Feature f) {
  switch (f) {
    case F::FullName:
      return !fv.full_name.empty();
    case F::BirthCountry:
      return fv.birth_country.has_value();
    case F::DeathCountry:
      return fv.death_country.has_value();
    default:
      return numeric_value(fv, f).has_value();
  }
}

std::optional<double> age_of_death(const Multigraph& g, VertexIndex v) {
  return checked_age(g.vertex(v));
}

NuclearFeatures nuclear_features(const Multigraph& g, VertexIndex v) {
  return nuclear_with(g, v, direct_age(g));
}

ExtendedFeatures extended_features(const Multigraph& g, VertexIndex v) {
  return extended_with(g, v, direct_age(g));
}

FeatureVector feature_vector(const Multigraph& g, VertexIndex v) {
  return vector_with(g, v, direct_age(g), nullptr);
}

bool FeatureTable::has_column(Feature f) const noexcept {
  const auto cols = columns();
  return std::find(cols.begin(), cols.end(), f) != cols.end();
}

FeatureTable FeatureTable::project(FeatureSet set) const {
  for (Feature f : feature_set_columns(set)) {
    if (!has_column(f)) {
      throw DataError("feature set '" + std::string(feature_set_name(set)) +
                      "' needs column '" + std::string(feature_name(f)) +
                      "' missing from a '" + std::string(feature_set_name(set_)) + "' table");
    }
  }
  FeatureTable out(set);
  out.rows_ = rows_;
  out.diagnostics_ = diagnostics_;
  return out;
}

FeatureTable feature_matrix(const Multigraph& g, FeatureSet set, unsigned threads) {
  const std::size_t n = g.vertex_count();

  // Ages are looked up many times (once per neighbour), so compute them once.
  std::vector<double> ages(n);
  parallel_for(n, threads, [&](std::size_t v) {
    const auto a = checked_age(g.vertex(static_cast<VertexIndex>(v)));
    ages[v] = a ? *a : std::numeric_limits<double>::quiet_NaN();
  });
  auto age = [&ages](VertexIndex v) -> std::optional<double> {
    const double a = ages[v];
    if (std::isnan(a)) return std::nullopt;
    return a;
  };

  std::vector<VertexIndex> order;
  order.reserve(n);
  for (VertexIndex v = 0; v < n; ++v) {
    if (!g.vertex(v).placeholder) order.push_back(v);
  }
  std::sort(order.begin(), order.end(),
            [&](VertexIndex a, VertexIndex b) { return g.vertex(a).id < g.vertex(b).id; });

  FeatureTable table(set);
  auto& rows = table.rows();
  rows.resize(order.size());
  std::vector<unsigned char> ambiguous(order.size(), 0);
  parallel_for(order.size(), threads, [&](std::size_t i) {
    bool amb = false;
    rows[i].id = g.vertex(order[i]).id;
    rows[i].features = vector_with(g, order[i], age, &amb);
    ambiguous[i] = amb ? 1 : 0;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (ambiguous[i]) {
      table.diagnostics().push_back("'" + rows[i].id +
                                    "' has several parents of one gender; parent features left absent");
    }
  }
  return table;
}

}  // namespace lifegraph
