#pragma once

// Fixture builders and the naive feature oracle shared by unit and
// acceptance tests.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lifegraph/features.hpp"
#include "lifegraph/graph.hpp"
#include "lifegraph/ingest.hpp"
#include "lifegraph/random.hpp"

namespace lifegraph::testing {

inline std::optional<PartialDate> date(const char* text) {
  if (!text) return std::nullopt;
  auto d = parse_date(text);
  if (!d) throw std::logic_error(std::string("bad fixture date ") + text);
  return d;
}

inline ProfileRecord person(std::string id, Gender gender, const char* birth = nullptr,
                            const char* death = nullptr, const char* birth_place = nullptr) {
  ProfileRecord p;
  p.id = std::move(id);
  p.full_name = "Person " + p.id;
  p.gender = gender;
  p.birth = date(birth);
  p.death = date(death);
  if (birth_place) p.birth_location = birth_place;
  return p;
}

/// Calendar arithmetic through std::chrono, independent of the library's
/// own day counting.
inline std::optional<double> oracle_age(const Vertex& v) {
  if (!v.birth || !v.death) return std::nullopt;
  double age;
  if (v.birth->is_complete() && v.death->is_complete()) {
    using namespace std::chrono;
    auto days_of = [](const PartialDate& d) {
      return sys_days(year_month_day(year(d.year), month(*d.month), day(*d.day))).time_since_epoch().count();
    };
    age = static_cast<double>(days_of(*v.death) - days_of(*v.birth)) / 365.2425;
  } else {
    age = static_cast<double>(v.death->year - v.birth->year);
  }
  if (age < 0.0 || age > 122.0) return std::nullopt;
  return age;
}

/// Straight per-vertex recomputation of every feature by scanning the raw
/// link list. Quadratic and deliberately simple.
class NaiveFeatures {
 public:
  explicit NaiveFeatures(const Multigraph& g) : g_(g) {}

  std::set<VertexIndex> kin(VertexIndex v, LinkType t) const {
    std::set<VertexIndex> out;
    for (const auto& l : g_.links()) {
      if (l.u == v && l.type == t) out.insert(l.v);
    }
    return out;
  }

  std::optional<double> age(VertexIndex v) const { return oracle_age(g_.vertex(v)); }

  std::optional<VertexIndex> parent(VertexIndex v, Gender gender) const {
    std::optional<VertexIndex> found;
    int count = 0;
    for (VertexIndex p : kin(v, LinkType::Parent)) {
      if (g_.vertex(p).gender == gender) {
        found = p;
        ++count;
      }
    }
    if (count != 1) return std::nullopt;
    return found;
  }

  std::optional<double> age_via(std::optional<VertexIndex> v) const {
    if (!v) return std::nullopt;
    return age(*v);
  }

  FeatureVector compute(VertexIndex v) const {
    const Vertex& x = g_.vertex(v);
    FeatureVector f;
    f.full_name = x.full_name;
    if (x.birth) f.birth_year = x.birth->year;
    if (x.death) f.death_year = x.death->year;
    f.gender_code = static_cast<int>(x.gender);
    f.birth_country = normalize_country(x.birth_location ? std::optional<std::string_view>(*x.birth_location)
                                                         : std::nullopt);
    f.death_country = normalize_country(x.death_location ? std::optional<std::string_view>(*x.death_location)
                                                         : std::nullopt);
    f.age_of_death = age(v);

    f.children_number = static_cast<int>(kin(v, LinkType::Child).size());
    const auto spouses = kin(v, LinkType::Spouse);
    f.spouse_number = static_cast<int>(spouses.size());
    std::vector<double> spouse_ages;
    for (VertexIndex s : spouses) {
      if (auto a = age(s)) spouse_ages.push_back(*a);
    }
    if (!spouse_ages.empty()) {
      f.min_spouse_age_of_death = *std::min_element(spouse_ages.begin(), spouse_ages.end());
      f.max_spouse_age_of_death = *std::max_element(spouse_ages.begin(), spouse_ages.end());
      double sum = 0.0;
      for (double a : spouse_ages) sum += a;
      f.avg_spouse_age_of_death = sum / static_cast<double>(spouse_ages.size());
    }

    const auto father = parent(v, Gender::Male);
    const auto mother = parent(v, Gender::Female);
    f.father_age_of_death = age_via(father);
    f.mother_age_of_death = age_via(mother);
    if (father) {
      f.paternal_grandfather_age_of_death = age_via(parent(*father, Gender::Male));
      f.paternal_grandmother_age_of_death = age_via(parent(*father, Gender::Female));
    }
    if (mother) {
      f.maternal_grandfather_age_of_death = age_via(parent(*mother, Gender::Male));
      f.maternal_grandmother_age_of_death = age_via(parent(*mother, Gender::Female));
    }

    const auto siblings = kin(v, LinkType::Sibling);
    f.sibling_number = static_cast<int>(siblings.size());
    std::vector<double> sibling_ages;
    for (VertexIndex s : siblings) {
      if (auto a = age(s)) sibling_ages.push_back(*a);
    }
    if (!sibling_ages.empty()) {
      f.max_sibling_age_of_death = *std::max_element(sibling_ages.begin(), sibling_ages.end());
      double sum = 0.0;
      for (double a : sibling_ages) sum += a;
      f.avg_sibling_age_of_death = sum / static_cast<double>(sibling_ages.size());
    }
    return f;
  }

 private:
  const Multigraph& g_;
};

inline bool close_optional(const std::optional<double>& a, const std::optional<double>& b, double tol) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::fabs(*a - *b) <= tol;
}

/// Field-by-field comparison: integers and tags exactly, real values to
/// `tol`. Returns the name of the first mismatching feature or "".
inline std::string first_mismatch(const FeatureVector& a, const FeatureVector& b, double tol) {
  if (a.full_name != b.full_name) return "full_name";
  if (a.birth_year != b.birth_year) return "birth_year";
  if (a.death_year != b.death_year) return "death_year";
  if (a.gender_code != b.gender_code) return "gender";
  if (a.birth_country != b.birth_country) return "birth_country";
  if (a.death_country != b.death_country) return "death_country";
  if (!close_optional(a.age_of_death, b.age_of_death, tol)) return "age_of_death";
  if (a.children_number != b.children_number) return "children_number";
  if (a.spouse_number != b.spouse_number) return "spouse_number";
  if (!close_optional(a.min_spouse_age_of_death, b.min_spouse_age_of_death, tol)) return "min_spouse_age_of_death";
  if (!close_optional(a.max_spouse_age_of_death, b.max_spouse_age_of_death, tol)) return "max_spouse_age_of_death";
  if (!close_optional(a.avg_spouse_age_of_death, b.avg_spouse_age_of_death, tol)) return "avg_spouse_age_of_death";
  if (!close_optional(a.father_age_of_death, b.father_age_of_death, tol)) return "father_age_of_death";
  if (!close_optional(a.mother_age_of_death, b.mother_age_of_death, tol)) return "mother_age_of_death";
  if (!close_optional(a.paternal_grandfather_age_of_death, b.paternal_grandfather_age_of_death, tol))
    return "paternal_grandfather_age_of_death";
  if (!close_optional(a.maternal_grandfather_age_of_death, b.maternal_grandfather_age_of_death, tol))
    return "maternal_grandfather_age_of_death";
  if (!close_optional(a.paternal_grandmother_age_of_death, b.paternal_grandmother_age_of_death, tol))
    return "paternal_grandmother_age_of_death";
  if (!close_optional(a.maternal_grandmother_age_of_death, b.maternal_grandmother_age_of_death, tol))
    return "maternal_grandmother_age_of_death";
  if (a.sibling_number != b.sibling_number) return "sibling_number";
  if (!close_optional(a.max_sibling_age_of_death, b.max_sibling_age_of_death, tol)) return "max_sibling_age_of_death";
  if (!close_optional(a.avg_sibling_age_of_death, b.avg_sibling_age_of_death, tol)) return "avg_sibling_age_of_death";
  return "";
}

/// Random graph with n vertices: mixed genders, complete, year-only and
/// missing dates, a few placeholders, and random kin links of every type
/// (including occasional duplicate and same-gender parent links).
inline Multigraph random_graph(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Multigraph g;
  static const char* places[] = {"Boston, Massachusetts, United States", "Ohio", "London, England",
                                 "Toronto, Ontario, Canada", "Springfield", "Bavaria, Germany"};
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v;
    v.id = "R" + std::to_string(100000 + i);
    if (rng.bernoulli(0.05)) {
      v.id = "~private:" + v.id;
      v.placeholder = true;
      v.is_private = true;
      g.add_vertex(std::move(v));
      continue;
    }
    v.full_name = "Name " + std::to_string(i);
    v.gender = static_cast<Gender>(rng.below(3));
    const int year = 1650 + static_cast<int>(rng.below(250));
    const double kind = rng.uniform();
    if (kind < 0.6) {
      v.birth = PartialDate{year, static_cast<std::uint8_t>(1 + rng.below(12)),
                            static_cast<std::uint8_t>(1 + rng.below(28))};
      v.death = PartialDate{year + static_cast<int>(rng.below(110)),
                            static_cast<std::uint8_t>(1 + rng.below(12)),
                            static_cast<std::uint8_t>(1 + rng.below(28))};
    } else if (kind < 0.8) {
      v.birth = PartialDate{year, std::nullopt, std::nullopt};
      v.death = PartialDate{year + static_cast<int>(rng.below(130)) - 5, std::nullopt, std::nullopt};
    } else if (kind < 0.9) {
      v.birth = PartialDate{year, std::nullopt, std::nullopt};
    }
    if (rng.bernoulli(0.7)) v.birth_location = places[rng.below(6)];
    if (rng.bernoulli(0.5)) v.death_location = places[rng.below(6)];
    g.add_vertex(std::move(v));
  }
  const std::size_t links = 3 * n;
  for (std::size_t i = 0; i < links; ++i) {
    const auto u = static_cast<VertexIndex>(rng.below(n));
    const auto w = static_cast<VertexIndex>(rng.below(n));
    if (u == w) continue;
    const auto type = kAllLinkTypes[rng.below(4)];
    g.add_link_pair(u, w, type, std::nullopt);
  }
  g.finalize();
  return g;
}

}  // namespace lifegraph::testing
