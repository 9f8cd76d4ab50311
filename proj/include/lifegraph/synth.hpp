#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "lifegraph/partial_date.hpp"
#include "lifegraph/profile.hpp"

namespace lifegraph {

/// Parameters of the synthetic population model.
///
/// A person dies in infancy (age uniform in [0, 1)) with probability
/// infant_mortality; otherwise the lifespan is
///   adult_mode + adult_spread * (Z - mode(Z)) + parent_child_slope * (midparent - adult mean)
/// with Z standard skew-normal of skewness parameter adult_skew (delta), so
/// adult_mode is the mode of the adult component. Spouses share part of the
/// Gaussian term of Z, which makes their base lifespans correlate at
/// spouse_corr. Adult lifespans are clipped to [adult_minimum, 122).
struct SynthConfig {
  int generations = 3;
  int founders = 1000;
  double infant_mortality = 0.1;
  double adult_mode = 75.0;
  double adult_spread = 18.0;
  double adult_skew = -0.7;
  double adult_minimum = 15.0;
  double parent_child_slope = 0.1;
  double spouse_corr = 0.2;
  double mean_children = 2.5;
  double missing_rate = 0.0;
  /// Fraction of people left out of the emitted stream; references to them
  /// become placeholders when the graph is built.
  double private_rate = 0.0;
  int first_birth_year = 1650;
  int founder_birth_span = 25;
  double us_fraction = 0.5;
  std::uint64_t seed = 1;

  /// Throws DataError for infeasible settings.
  void validate() const;

  friend bool operator==(const SynthConfig&, const SynthConfig&) = default;
};

/// Mean of the (unclipped) adult lifespan component.
double adult_mean(const SynthConfig& cfg);

SynthConfig synth_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const SynthConfig& cfg);

inline constexpr std::int32_t kNoPerson = -1;

struct SynthPerson {
  Gender gender = Gender::Unknown;
  PartialDate birth;
  double lifespan = 0.0;  // years
  bool infant = false;
  std::int32_t father = kNoPerson;
  std::int32_t mother = kNoPerson;
  std::int32_t spouse = kNoPerson;
  int generation = 0;
  std::uint16_t location = 0;
  std::uint16_t surname = 0;
};

struct Population {
  std::vector<SynthPerson> people;
  /// Couples in formation order (husband, wife).
  std::vector<std::pair<std::int32_t, std::int32_t>> couples;
  /// children[i] lists person i's children, ascending.
  std::vector<std::vector<std::int32_t>> children;
};

/// Simulates people and kinship without rendering profiles.
Population simulate_population(const SynthConfig& cfg);

/// Death date implied by a birth date and lifespan (whole days, floored).
PartialDate death_date(const PartialDate& birth, double lifespan_years);

/// Renders a population as profiles ("I0000001", ...) with fully
/// reciprocal kin references, masking fields at cfg.missing_rate and
/// dropping people at cfg.private_rate.
std::vector<ProfileRecord> render_profiles(const Population& pop, const SynthConfig& cfg);

std::vector<ProfileRecord> generate_population(const SynthConfig& cfg);

}  // namespace lifegraph
