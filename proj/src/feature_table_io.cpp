#include <charconv>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "lifegraph/csv.hpp"
#include "lifegraph/error.hpp"
#include "lifegraph/features.hpp"

namespace lifegraph {
namespace {

std::vector<Feature> exported_columns(const FeatureTable& table) {
  std::vector<Feature> cols(table.columns().begin(), table.columns().end());
  if (!table.has_column(Feature::AgeOfDeath)) cols.push_back(Feature::AgeOfDeath);
  return cols;
}

bool is_integer_feature(Feature f) {
  switch (f) {
    case Feature::BirthYear:
    case Feature::DeathYear:
    case Feature::Gender:
    case Feature::ChildrenNumber:
    case Feature::SpouseNumber:
    case Feature::SiblingNumber:
      return true;
    default:
      return false;
  }
}

std::optional<double> exported_number(const FeatureVector& fv, Feature f,
                                      const FeatureCsvOptions& options) {
  auto value = numeric_value(fv, f);
  if (!value && options.zero_fill_aggregates && is_aggregate(f)) return 0.0;
  return value;
}

void write_cell(CsvWriter& w, const FeatureVector& fv, Feature f,
                const FeatureCsvOptions& options) {
  switch (f) {
    case Feature::FullName:
      w.field(fv.full_name);
      return;
    case Feature::BirthCountry:
    case Feature::DeathCountry: {
      const auto& c = f == Feature::BirthCountry ? fv.birth_country : fv.death_country;
      if (c) {
        w.field(country_tag(*c));
      } else {
        w.empty();
      }
      return;
    }
    default:
      break;
  }
  const auto value = exported_number(fv, f, options);
  if (!value) {
    w.empty();
  } else if (is_integer_feature(f)) {
    w.field(static_cast<long long>(*value));
  } else {
    w.field(*value);
  }
}

nlohmann::ordered_json json_cell(const FeatureVector& fv, Feature f,
                                 const FeatureCsvOptions& options) {
  switch (f) {
    case Feature::FullName:
      return fv.full_name;
    case Feature::BirthCountry:
    case Feature::DeathCountry: {
      const auto& c = f == Feature::BirthCountry ? fv.birth_country : fv.death_country;
      if (c) return std::string(country_tag(*c));
      return nullptr;
    }
    default:
      break;
  }
  const auto value = exported_number(fv, f, options);
  if (!value) return nullptr;
  if (is_integer_feature(f)) return static_cast<long long>(*value);
  return *value;
}

template <typename T>
T parse_integer(const std::string& s, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("feature table line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return value;
}

double parse_real(const std::string& s, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("feature table line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return value;
}

void read_cell(FeatureVector& fv, Feature f, const std::string& s, std::size_t line) {
  if (f == Feature::FullName) {
    fv.full_name = s;
    return;
  }
  if (s.empty()) return;  // absent; counts default to 0 but are always written
  auto real = [&] { return parse_real(s, line); };
  auto integer = [&] { return parse_integer<int>(s, line); };
  switch (f) {
    case Feature::FullName:
      break;
    case Feature::BirthCountry:
    case Feature::DeathCountry: {
      auto c = parse_country_tag(s);
      if (!c) throw DataError("feature table line " + std::to_string(line) + ": unknown country '" + s + "'");
      (f == Feature::BirthCountry ? fv.birth_country : fv.death_country) = c;
      break;
    }
    case Feature::BirthYear:
      fv.birth_year = integer();
      break;
    case Feature::DeathYear:
      fv.death_year = integer();
      break;
    case Feature::Gender: {
      const int g = integer();
      if (g < 0 || g > 2) throw DataError("feature table line " + std::to_string(line) + ": bad gender code");
      fv.gender_code = g;
      break;
    }
    case Feature::AgeOfDeath:
      fv.age_of_death = real();
      break;
    case Feature::ChildrenNumber:
      fv.children_number = integer();
      break;
    case Feature::SpouseNumber:
      fv.spouse_number = integer();
      break;
    case Feature::MinSpouseAgeOfDeath:
      fv.min_spouse_age_of_death = real();
      break;
    case Feature::MaxSpouseAgeOfDeath:
      fv.max_spouse_age_of_death = real();
      break;
    case Feature::AvgSpouseAgeOfDeath:
      fv.avg_spouse_age_of_death = real();
      break;
    case Feature::FatherAgeOfDeath:
      fv.father_age_of_death = real();
      break;
    case Feature::MotherAgeOfDeath:
      fv.mother_age_of_death = real();
      break;
    case Feature::PaternalGrandfatherAgeOfDeath:
      fv.paternal_grandfather_age_of_death = real();
      break;
    case Feature::MaternalGrandfatherAgeOfDeath:
      fv.maternal_grandfather_age_of_death = real();
      break;
    case Feature::PaternalGrandmotherAgeOfDeath:
      fv.paternal_grandmother_age_of_death = real();
      break;
    case Feature::MaternalGrandmotherAgeOfDeath:
      fv.maternal_grandmother_age_of_death = real();
      break;
    case Feature::SiblingNumber:
      fv.sibling_number = integer();
      break;
    case Feature::MaxSiblingAgeOfDeath:
      fv.max_sibling_age_of_death = real();
      break;
    case Feature::AvgSiblingAgeOfDeath:
      fv.avg_sibling_age_of_death = real();
      break;
  }
}

FeatureSet recognise_set(const std::vector<Feature>& header) {
  for (auto s : {FeatureSet::Full, FeatureSet::AllNumeric, FeatureSet::Heritage,
                 FeatureSet::NuclearFamily}) {
    FeatureTable probe(s);
    if (exported_columns(probe) == header) return s;
  }
  throw DataError("feature table header does not match any feature set");
}

}  // namespace

void write_feature_csv(std::ostream& out, const FeatureTable& table,
                       const FeatureCsvOptions& options) {
  const auto cols = exported_columns(table);
  CsvWriter w(out);
  w.field("id");
  for (Feature f : cols) w.field(feature_name(f));
  w.end_row();
  for (const auto& row : table.rows()) {
    w.field(row.id);
    for (Feature f : cols) write_cell(w, row.features, f, options);
    w.end_row();
  }
  if (!out) throw IoError("error while writing feature table");
}

void write_feature_json(std::ostream& out, const FeatureTable& table,
                        const FeatureCsvOptions& options) {
  const auto cols = exported_columns(table);
  out << "[";
  bool first = true;
  for (const auto& row : table.rows()) {
    nlohmann::ordered_json j;
    j["id"] = row.id;
    for (Feature f : cols) j[std::string(feature_name(f))] = json_cell(row.features, f, options);
    out << (first ? "\n" : ",\n") << j.dump();
    first = false;
  }
  out << (first ? "]\n" : "\n]\n");
  if (!out) throw IoError("error while writing feature table");
}

FeatureTable read_feature_csv(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row) || row.empty() || row[0] != "id") {
    throw DataError("feature table: missing header");
  }
  std::vector<Feature> header;
  for (std::size_t i = 1; i < row.size(); ++i) {
    auto f = parse_feature(row[i]);
    if (!f) throw DataError("feature table: unknown column '" + row[i] + "'");
    header.push_back(*f);
  }
  FeatureTable table(recognise_set(header));
  while (reader.next(row)) {
    if (row.size() != header.size() + 1) {
      throw DataError("feature table line " + std::to_string(reader.line()) +
                      ": expected " + std::to_string(header.size() + 1) + " fields");
    }
    FeatureRow r;
    r.id = row[0];
    for (std::size_t i = 0; i < header.size(); ++i) {
      read_cell(r.features, header[i], row[i + 1], reader.line());
    }
    table.rows().push_back(std::move(r));
  }
  return table;
}

}  // namespace lifegraph
