#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lifegraph/error.hpp"
#include "lifegraph/features.hpp"
#include "support.hpp"

using namespace lifegraph;
using lifegraph::testing::person;

namespace {

struct Family {
  Multigraph g;
  VertexIndex operator[](const char* id) const { return *g.find(id); }
};

// ego (E) with father F, mother M, paternal grandparents FF, FM, maternal
// grandmother MM, siblings S1 (died 50) and S2 (died 80), spouses W1/W2 and
// three children (one of them private).
Family family_fixture() {
  auto e = person("E", Gender::Male, "1900-01-01", "1980-01-01", "Boston, Massachusetts");
  auto f = person("F", Gender::Male, "1870", "1940");
  auto m = person("M", Gender::Female, "1875", "1935");
  auto ff = person("FF", Gender::Male, "1840", "1900");
  auto fm = person("FM", Gender::Female, "1842", "1930");
  auto mm = person("MM", Gender::Female, "1850");
  auto s1 = person("S1", Gender::Female, "1902", "1952");
  auto s2 = person("S2", Gender::Male, "1905", "1985");
  auto w1 = person("W1", Gender::Female, "1901", "1961");
  auto w2 = person("W2", Gender::Female, "1910", "1980");
  auto c1 = person("C1", Gender::Male, "1925");
  auto c2 = person("C2", Gender::Female, "1930");
  e.parent_ids = {"F", "M"};
  e.sibling_ids = {"S1", "S2"};
  e.spouse_ids = {"W1", "W2"};
  e.child_ids = {"C1", "C2", "secret-child"};
  f.parent_ids = {"FF", "FM"};
  m.parent_ids = {"MM"};
  return {build_multigraph(std::vector{e, f, m, ff, fm, mm, s1, s2, w1, w2, c1, c2})};
}

}  // namespace

TEST_CASE("feature names and sets") {
  CHECK(all_features().size() == kFeatureCount);
  for (Feature f : all_features()) CHECK(parse_feature(feature_name(f)) == f);
  CHECK(parse_feature("max-sibling-age-of-death") == Feature::MaxSiblingAgeOfDeath);
  CHECK_FALSE(parse_feature("shoe_size").has_value());

  const auto heritage = feature_set_columns(FeatureSet::Heritage);
  const std::vector<Feature> expected_heritage = {
      Feature::BirthYear, Feature::Gender, Feature::FatherAgeOfDeath, Feature::MotherAgeOfDeath,
      Feature::PaternalGrandfatherAgeOfDeath, Feature::MaternalGrandfatherAgeOfDeath,
      Feature::PaternalGrandmotherAgeOfDeath, Feature::MaternalGrandmotherAgeOfDeath,
      Feature::SiblingNumber, Feature::MaxSiblingAgeOfDeath, Feature::AvgSiblingAgeOfDeath};
  CHECK(std::vector<Feature>(heritage.begin(), heritage.end()) == expected_heritage);

  const auto all_numeric = feature_set_columns(FeatureSet::AllNumeric);
  for (Feature f : {Feature::DeathYear, Feature::FullName, Feature::BirthCountry, Feature::DeathCountry}) {
    CHECK(std::find(all_numeric.begin(), all_numeric.end(), f) == all_numeric.end());
  }
  for (Feature f : all_numeric) CHECK(is_numeric(f));
  CHECK(all_numeric.size() == 17);
  CHECK(feature_set_columns(FeatureSet::NuclearFamily).size() == 7);
  CHECK(feature_set_columns(FeatureSet::Full).size() == 21);
  CHECK(parse_feature_set("nuclear") == FeatureSet::NuclearFamily);
  CHECK_FALSE(parse_feature_set("everything").has_value());
}

TEST_CASE("age of death") {
  const auto g = build_multigraph(std::vector{
      person("A", Gender::Male, "1900-01-01", "1980-01-01"), person("B", Gender::Male, "1850", "1910"),
      person("C", Gender::Male, nullptr, "1910"), person("D", Gender::Male, "1900", "1850"),
      person("E", Gender::Male, "1900-03", "1950-01-20")});
  CHECK(*age_of_death(g, 0) == doctest::Approx(80.0).epsilon(0.0001));
  CHECK(*age_of_death(g, 1) == 60.0);
  CHECK_FALSE(age_of_death(g, 2).has_value());
  CHECK_FALSE(age_of_death(g, 3).has_value());
  CHECK(*age_of_death(g, 4) == 50.0);
}

TEST_CASE("nuclear features") {
  const auto fam = family_fixture();
  const auto n = nuclear_features(fam.g, fam["E"]);
  CHECK(n.children_number == 3);  // includes the private child
  CHECK(n.spouse_number == 2);
  CHECK(*n.min_spouse_age_of_death == 60.0);
  CHECK(*n.max_spouse_age_of_death == 70.0);
  CHECK(*n.avg_spouse_age_of_death == 65.0);

  const auto single = nuclear_features(fam.g, fam["S1"]);
  CHECK(single.spouse_number == 0);
  CHECK_FALSE(single.min_spouse_age_of_death.has_value());
  CHECK_FALSE(single.max_spouse_age_of_death.has_value());
  CHECK_FALSE(single.avg_spouse_age_of_death.has_value());
}

TEST_CASE("extended features") {
  const auto fam = family_fixture();
  const auto x = extended_features(fam.g, fam["E"]);
  CHECK(*x.father_age_of_death == 70.0);
  CHECK(*x.mother_age_of_death == 60.0);
  CHECK(*x.paternal_grandfather_age_of_death == 60.0);
  CHECK(*x.paternal_grandmother_age_of_death == 88.0);
  CHECK_FALSE(x.maternal_grandfather_age_of_death.has_value());
  CHECK_FALSE(x.maternal_grandmother_age_of_death.has_value());  // no death date
  CHECK(x.sibling_number == 2);
  CHECK(*x.max_sibling_age_of_death == 80.0);
  CHECK(*x.avg_sibling_age_of_death == 65.0);
  CHECK_FALSE(x.ambiguous_parents);
}

TEST_CASE("two parents of the same gender leave the feature absent with a diagnostic") {
  auto c = person("C", Gender::Male, "1900", "1970");
  c.parent_ids = {"P1", "P2", "P3"};
  const auto g = build_multigraph(std::vector{c, person("P1", Gender::Male, "1870", "1940"),
                                              person("P2", Gender::Male, "1871", "1941"),
                                              person("P3", Gender::Female, "1872", "1942")});
  const auto x = extended_features(g, *g.find("C"));
  CHECK(x.ambiguous_parents);
  CHECK_FALSE(x.father_age_of_death.has_value());
  CHECK(*x.mother_age_of_death == 70.0);
  const auto table = feature_matrix(g, FeatureSet::Full);
  CHECK(table.diagnostics().size() == 1);
}

TEST_CASE("feature vector basics") {
  const auto fam = family_fixture();
  const auto v = feature_vector(fam.g, fam["E"]);
  CHECK(v.full_name == "Person E");
  CHECK(v.birth_year == 1900);
  CHECK(v.death_year == 1980);
  CHECK(v.gender_code == 1);
  CHECK(v.birth_country == Country::UnitedStates);
  CHECK_FALSE(v.death_country.has_value());
  CHECK(numeric_value(v, Feature::Gender) == 1.0);
  CHECK_FALSE(numeric_value(v, Feature::FullName).has_value());
  CHECK(has_value(v, Feature::FullName));
}

TEST_CASE("feature matrix rows, order and placeholders") {
  const auto fam = family_fixture();
  const auto table = feature_matrix(fam.g, FeatureSet::Heritage);
  CHECK(table.size() == 12);  // placeholder child excluded
  CHECK(table.set() == FeatureSet::Heritage);
  for (std::size_t i = 1; i < table.size(); ++i) CHECK(table.rows()[i - 1].id < table.rows()[i].id);
  CHECK_FALSE(table.has_column(Feature::ChildrenNumber));
  CHECK(table.has_column(Feature::FatherAgeOfDeath));

  const auto empty = feature_matrix(Multigraph{}, FeatureSet::Full);
  CHECK(empty.size() == 0);
  CHECK(empty.columns().size() == 21);
}

TEST_CASE("feature matrix matches the naive oracle and is thread-independent") {
  auto g = lifegraph::testing::random_graph(400, 17);
  clean_inconsistent(g);
  const auto one = feature_matrix(g, FeatureSet::Full, 1);
  const auto four = feature_matrix(g, FeatureSet::Full, 4);
  CHECK(one == four);
  const lifegraph::testing::NaiveFeatures oracle(g);
  for (const auto& row : one.rows()) {
    const auto expected = oracle.compute(*g.find(row.id));
    CAPTURE(row.id);
    CHECK(lifegraph::testing::first_mismatch(row.features, expected, 1e-12) == "");
  }
}

TEST_CASE("aggregate invariants on a random graph") {
  auto g = lifegraph::testing::random_graph(600, 23);
  const auto table = feature_matrix(g, FeatureSet::Full);
  for (const auto& row : table.rows()) {
    const auto& f = row.features;
    if (f.min_spouse_age_of_death) {
      CHECK(*f.min_spouse_age_of_death <= *f.avg_spouse_age_of_death + 1e-12);
      CHECK(*f.avg_spouse_age_of_death <= *f.max_spouse_age_of_death + 1e-12);
    }
    if (f.max_sibling_age_of_death) CHECK(*f.avg_sibling_age_of_death <= *f.max_sibling_age_of_death + 1e-12);
    if (f.age_of_death) {
      CHECK(*f.age_of_death >= 0.0);
      CHECK(*f.age_of_death <= 122.0);
    }
  }
}

TEST_CASE("children count is consistent with the children's parent links") {
  auto g = lifegraph::testing::random_graph(300, 29);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    std::size_t children = 0;
    for (VertexIndex u = 0; u < g.vertex_count(); ++u) {
      const auto parents = g.parents_of(u);
      if (std::find(parents.begin(), parents.end(), v) != parents.end()) ++children;
    }
    CHECK(nuclear_features(g, v).children_number == static_cast<int>(children));
  }
}

TEST_CASE("feature CSV round-trip and layout") {
  const auto fam = family_fixture();
  const auto table = feature_matrix(fam.g, FeatureSet::Full);
  std::stringstream csv;
  write_feature_csv(csv, table);
  const std::string text = csv.str();
  CHECK(text.rfind("id,full_name,birth_year,death_year,gender,", 0) == 0);
  const auto back = read_feature_csv(csv);
  CHECK(back.set() == FeatureSet::Full);
  REQUIRE(back.size() == table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(back.rows()[i].id == table.rows()[i].id);
    CHECK(lifegraph::testing::first_mismatch(back.rows()[i].features, table.rows()[i].features, 0.0) == "");
  }

  const auto nuclear = feature_matrix(fam.g, FeatureSet::NuclearFamily);
  std::stringstream ncsv;
  write_feature_csv(ncsv, nuclear);
  std::string header;
  std::getline(ncsv, header);
  CHECK(header == "id,birth_year,gender,children_number,spouse_number,min_spouse_age_of_death,"
                  "max_spouse_age_of_death,avg_spouse_age_of_death,age_of_death");
}

TEST_CASE("zero-fill export writes 0 for empty aggregates") {
  const auto g = build_multigraph(std::vector{person("A", Gender::Male, "1800", "1850")});
  const auto table = feature_matrix(g, FeatureSet::NuclearFamily);
  std::ostringstream plain;
  std::ostringstream filled;
  write_feature_csv(plain, table);
  write_feature_csv(filled, table, {true});
  CHECK(plain.str().find("A,1800,1,0,0,,,,50") != std::string::npos);
  CHECK(filled.str().find("A,1800,1,0,0,0,0,0,50") != std::string::npos);
}

TEST_CASE("feature JSON uses null for missing values") {
  const auto g = build_multigraph(std::vector{person("A", Gender::Unknown, "1800")});
  std::ostringstream out;
  write_feature_json(out, feature_matrix(g, FeatureSet::Heritage));
  const auto j = nlohmann::json::parse(out.str());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["id"] == "A");
  CHECK(j[0]["gender"] == 0);
  CHECK(j[0]["father_age_of_death"].is_null());
  CHECK(j[0]["age_of_death"].is_null());
}

TEST_CASE("projection") {
  const auto fam = family_fixture();
  const auto full = feature_matrix(fam.g, FeatureSet::Full);
  const auto heritage = full.project(FeatureSet::Heritage);
  CHECK(heritage.set() == FeatureSet::Heritage);
  CHECK(heritage.size() == full.size());
  CHECK_THROWS_AS(heritage.project(FeatureSet::NuclearFamily), DataError);
}

TEST_CASE("malformed feature CSV is rejected") {
  std::istringstream bad_header("id,shoe_size\nA,3\n");
  CHECK_THROWS_AS(read_feature_csv(bad_header), DataError);
  std::istringstream bad_value("id,birth_year,gender,children_number,spouse_number,min_spouse_age_of_death,"
                               "max_spouse_age_of_death,avg_spouse_age_of_death,age_of_death\nA,x,1,0,0,,,,\n");
  CHECK_THROWS_AS(read_feature_csv(bad_value), DataError);
}
