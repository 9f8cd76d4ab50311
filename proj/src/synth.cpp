#include "lifegraph/synth.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "lifegraph/error.hpp"
#include "lifegraph/random.hpp"

namespace lifegraph {
namespace {

constexpr double kLifespanCeiling = 121.99;
constexpr int kMinMotherAge = 18;
constexpr int kMaxMotherAge = 45;

constexpr std::array kUsLocations = {
    "Boston, Massachusetts, United States",      "Hartford, Connecticut, United States",
    "Philadelphia, Pennsylvania, United States", "Richmond, Virginia, United States",
    "Albany, New York, United States",           "Charleston, South Carolina, USA",
    "Providence, Rhode Island, USA",             "Baltimore, Maryland",
    "Salem, Essex, Massachusetts",               "Lancaster, Pennsylvania",
};
constexpr std::array kOtherLocations = {
    "London, England",          "York, Yorkshire, England",   "Edinburgh, Scotland",
    "Dublin, Ireland",          "Hamburg, Germany",           "Amsterdam, Netherlands",
    "Rouen, Normandie, France", "Quebec, New France",         "Oslo, Norway",
    "Stockholm, Sweden",
};
constexpr std::array kMaleNames = {"John",   "William", "Thomas", "James",  "George", "Samuel",
                                   "Joseph", "Henry",   "Robert", "Edward", "Charles", "Daniel"};
constexpr std::array kFemaleNames = {"Mary",      "Elizabeth", "Sarah",  "Anna",   "Margaret",
                                     "Hannah",    "Jane",      "Martha", "Susan",  "Abigail",
                                     "Catherine", "Rebecca"};
constexpr std::array kSurnames = {"Smith",  "Brown",  "Clark",   "Walker", "Hall",   "Allen",
                                  "Young",  "King",   "Wright",  "Baker",  "Adams",  "Nelson",
                                  "Carter", "Mitchell", "Turner", "Parker", "Collins", "Stewart",
                                  "Morris", "Rogers", "Cook",    "Bell",   "Bailey", "Cooper"};

constexpr std::size_t kLocationCount = kUsLocations.size() + kOtherLocations.size();

const char* location_name(std::uint16_t index) {
  if (index < kUsLocations.size()) return kUsLocations[index];
  return kOtherLocations[index - kUsLocations.size()];
}

// Standard skew-normal Z = delta * |U0| + sqrt(1 - delta^2) * U1.
struct SkewNormal {
  double delta;
  double mean;
  double variance;
  double mode;

  explicit SkewNormal(double d) : delta(d) {
    mean = delta * std::sqrt(2.0 / std::numbers::pi);
    variance = 1.0 - 2.0 * delta * delta / std::numbers::pi;
    if (delta == 0.0) {
      mode = 0.0;
      return;
    }
    // Approximate mode of the standard skew-normal (Azzalini).
    const double alpha = delta / std::sqrt(1.0 - delta * delta);
    const double sd = std::sqrt(variance);
    const double skewness = (4.0 - std::numbers::pi) / 2.0 * std::pow(mean / sd, 3.0);
    mode = mean - skewness * sd / 2.0 -
           std::copysign(1.0, alpha) / 2.0 * std::exp(-2.0 * std::numbers::pi / std::fabs(alpha));
  }

  double from_normals(double u0, double u1) const {
    return delta * std::fabs(u0) + std::sqrt(1.0 - delta * delta) * u1;
  }
};

// Loading of the shared spouse factor on each spouse's Gaussian part.
double spouse_loading(const SynthConfig& cfg) {
  const SkewNormal z(cfg.adult_skew);
  return cfg.spouse_corr * z.variance / (1.0 - cfg.adult_skew * cfg.adult_skew);
}

PartialDate random_birthday(Rng& rng, int year) {
  using namespace std::chrono;
  const sys_days start{std::chrono::year{year} / January / 1};
  const sys_days end{std::chrono::year{year + 1} / January / 1};
  const auto offset = static_cast<int>(rng.below(static_cast<std::uint64_t>((end - start).count())));
  const year_month_day ymd{start + days{offset}};
  return {year, static_cast<std::uint8_t>(unsigned(ymd.month())),
          static_cast<std::uint8_t>(unsigned(ymd.day()))};
}

std::string person_id(std::size_t index) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "I%07zu", index + 1);
  return buf;
}

class Simulator {
 public:
  explicit Simulator(const SynthConfig& cfg)
      : cfg_(cfg), rng_(cfg.seed), z_(cfg.adult_skew), mean_(adult_mean(cfg)),
        loading_(spouse_loading(cfg)) {}

  Population run() {
    std::vector<std::int32_t> cohort;
    for (int i = 0; i < cfg_.founders; ++i) {
      SynthPerson p;
      p.gender = rng_.bernoulli(0.5) ? Gender::Male : Gender::Female;
      const int year = cfg_.first_birth_year +
                       static_cast<int>(rng_.below(static_cast<std::uint64_t>(cfg_.founder_birth_span)));
      p.birth = random_birthday(rng_, year);
      p.infant = rng_.bernoulli(cfg_.infant_mortality);
      p.location = rng_.bernoulli(cfg_.us_fraction)
                       ? static_cast<std::uint16_t>(rng_.below(kUsLocations.size()))
                       : static_cast<std::uint16_t>(kUsLocations.size() +
                                                    rng_.below(kOtherLocations.size()));
      p.surname = static_cast<std::uint16_t>(rng_.below(kSurnames.size()));
      cohort.push_back(add(p));
    }
    for (int g = 0; g < cfg_.generations; ++g) {
      const bool breeding = g + 1 < cfg_.generations;
      const std::size_t first_couple = pop_.couples.size();
      if (breeding) pair_cohort(cohort);
      assign_lifespans(cohort, first_couple);
      if (!breeding) break;
      cohort = bear_children(first_couple, g + 1);
    }
    return std::move(pop_);
  }

 private:
  std::int32_t add(const SynthPerson& p) {
    pop_.people.push_back(p);
    pop_.children.emplace_back();
    return static_cast<std::int32_t>(pop_.people.size() - 1);
  }

  bool siblings(std::int32_t a, std::int32_t b) const {
    const auto& pa = pop_.people[static_cast<std::size_t>(a)];
    const auto& pb = pop_.people[static_cast<std::size_t>(b)];
    return pa.mother != kNoPerson && pa.mother == pb.mother;
  }

  void pair_cohort(const std::vector<std::int32_t>& cohort) {
    std::vector<std::int32_t> men;
    std::vector<std::int32_t> women;
    for (auto i : cohort) {
      const auto& p = pop_.people[static_cast<std::size_t>(i)];
      if (p.infant) continue;
      (p.gender == Gender::Male ? men : women).push_back(i);
    }
    rng_.shuffle(men.begin(), men.end());
    rng_.shuffle(women.begin(), women.end());
    const std::size_t pairs = std::min(men.size(), women.size());
    for (std::size_t i = 0; i < pairs; ++i) {
      // Swap in the first later woman who is not the man's sister.
      std::size_t j = i;
      while (j < women.size() && siblings(men[i], women[j])) ++j;
      if (j == women.size()) continue;
      std::swap(women[i], women[j]);
      pop_.couples.emplace_back(men[i], women[i]);
      pop_.people[static_cast<std::size_t>(men[i])].spouse = women[i];
      pop_.people[static_cast<std::size_t>(women[i])].spouse = men[i];
    }
  }

  double inherited_shift(const SynthPerson& p) const {
    if (p.father == kNoPerson || p.mother == kNoPerson) return 0.0;
    const double midparent = (pop_.people[static_cast<std::size_t>(p.father)].lifespan +
                              pop_.people[static_cast<std::size_t>(p.mother)].lifespan) /
                             2.0;
    return cfg_.parent_child_slope * (midparent - mean_);
  }

  double adult_lifespan(const SynthPerson& p, double z) const {
    const double raw = cfg_.adult_mode + cfg_.adult_spread * (z - z_.mode) + inherited_shift(p);
    return std::clamp(raw, cfg_.adult_minimum, kLifespanCeiling);
  }

  void assign_lifespans(const std::vector<std::int32_t>& cohort, std::size_t first_couple) {
    std::vector<bool> done(pop_.people.size(), false);
    const double shared = std::sqrt(std::fabs(loading_));
    const double own = std::sqrt(1.0 - std::fabs(loading_));
    const double sign = loading_ < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = first_couple; c < pop_.couples.size(); ++c) {
      const auto [h, w] = pop_.couples[c];
      const double s = rng_.normal();
      const double zh = z_.from_normals(rng_.normal(), shared * s + own * rng_.normal());
      const double zw = z_.from_normals(rng_.normal(), sign * shared * s + own * rng_.normal());
      auto& husband = pop_.people[static_cast<std::size_t>(h)];
      auto& wife = pop_.people[static_cast<std::size_t>(w)];
      husband.lifespan = adult_lifespan(husband, zh);
      wife.lifespan = adult_lifespan(wife, zw);
      done[static_cast<std::size_t>(h)] = done[static_cast<std::size_t>(w)] = true;
    }
    for (auto i : cohort) {
      if (done[static_cast<std::size_t>(i)]) continue;
      auto& p = pop_.people[static_cast<std::size_t>(i)];
      if (p.infant) {
        p.lifespan = rng_.uniform();
      } else {
        const double u0 = rng_.normal();
        const double u1 = rng_.normal();
        p.lifespan = adult_lifespan(p, z_.from_normals(u0, u1));
      }
    }
  }

  std::vector<std::int32_t> bear_children(std::size_t first_couple, int generation) {
    std::vector<std::int32_t> next;
    for (std::size_t c = first_couple; c < pop_.couples.size(); ++c) {
      const auto [h, w] = pop_.couples[c];
      const int count = rng_.poisson(cfg_.mean_children);
      const SynthPerson mother = pop_.people[static_cast<std::size_t>(w)];
      const SynthPerson father = pop_.people[static_cast<std::size_t>(h)];
      const int last_age = std::min(kMaxMotherAge, static_cast<int>(std::floor(mother.lifespan)) - 1);
      for (int k = 0; k < count; ++k) {
        if (last_age < kMinMotherAge) break;
        SynthPerson child;
        child.gender = rng_.bernoulli(0.5) ? Gender::Male : Gender::Female;
        const int age = static_cast<int>(rng_.between(kMinMotherAge, last_age));
        child.birth = random_birthday(rng_, mother.birth.year + age);
        child.infant = rng_.bernoulli(cfg_.infant_mortality);
        child.father = h;
        child.mother = w;
        child.generation = generation;
        child.location = mother.location;
        child.surname = father.surname;
        const auto id = add(child);
        pop_.children[static_cast<std::size_t>(h)].push_back(id);
        pop_.children[static_cast<std::size_t>(w)].push_back(id);
        next.push_back(id);
      }
    }
    return next;
  }

  const SynthConfig& cfg_;
  Rng rng_;
  SkewNormal z_;
  double mean_;
  double loading_;
  Population pop_;
};

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& msg) { throw DataError("synth config: " + msg); };
  if (generations < 1) fail("generations must be at least 1");
  if (founders < 1) fail("founders must be at least 1");
  if (!(infant_mortality >= 0.0 && infant_mortality < 1.0)) fail("infant_mortality must lie in [0, 1)");
  if (!(adult_spread > 0.0)) fail("adult_spread must be positive");
  if (!(adult_skew > -1.0 && adult_skew < 1.0)) fail("adult_skew must lie in (-1, 1)");
  if (!(adult_minimum >= 1.0 && adult_minimum < kLifespanCeiling)) fail("adult_minimum must lie in [1, 122)");
  if (!(adult_mode > adult_minimum && adult_mode < kLifespanCeiling)) fail("adult_mode must lie in (adult_minimum, 122)");
  if (!std::isfinite(parent_child_slope)) fail("parent_child_slope must be finite");
  if (!(spouse_corr > -1.0 && spouse_corr < 1.0)) fail("spouse_corr must lie in (-1, 1)");
  if (std::fabs(spouse_loading(*this)) > 1.0) {
    fail("spouse_corr is too strong for this adult_skew (the shared factor would exceed the Gaussian part)");
  }
  if (!(mean_children > 0.0)) fail("mean_children must be positive");
  if (!(missing_rate >= 0.0 && missing_rate <= 1.0)) fail("missing_rate must lie in [0, 1]");
  if (!(private_rate >= 0.0 && private_rate < 1.0)) fail("private_rate must lie in [0, 1)");
  if (!(us_fraction >= 0.0 && us_fraction <= 1.0)) fail("us_fraction must lie in [0, 1]");
  if (founder_birth_span < 1) fail("founder_birth_span must be at least 1");
  if (first_birth_year < 1 || first_birth_year > 9000) fail("first_birth_year out of range");
}

double adult_mean(const SynthConfig& cfg) {
  const SkewNormal z(cfg.adult_skew);
  return cfg.adult_mode + cfg.adult_spread * (z.mean - z.mode);
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("synth config must be a JSON object");
  SynthConfig cfg;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "generations") cfg.generations = value.get<int>();
      else if (key == "founders") cfg.founders = value.get<int>();
      else if (key == "infant_mortality") cfg.infant_mortality = value.get<double>();
      else if (key == "adult_mode") cfg.adult_mode = value.get<double>();
      else if (key == "adult_spread") cfg.adult_spread = value.get<double>();
      else if (key == "adult_skew") cfg.adult_skew = value.get<double>();
      else if (key == "adult_minimum") cfg.adult_minimum = value.get<double>();
      else if (key == "parent_child_slope") cfg.parent_child_slope = value.get<double>();
      else if (key == "spouse_corr") cfg.spouse_corr = value.get<double>();
      else if (key == "mean_children") cfg.mean_children = value.get<double>();
      else if (key == "missing_rate") cfg.missing_rate = value.get<double>();
      else if (key == "private_rate") cfg.private_rate = value.get<double>();
      else if (key == "first_birth_year") cfg.first_birth_year = value.get<int>();
      else if (key == "founder_birth_span") cfg.founder_birth_span = value.get<int>();
      else if (key == "us_fraction") cfg.us_fraction = value.get<double>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else throw DataError("synth config: unknown key '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw DataError("synth config: bad value for '" + key + "'");
    }
  }
  return cfg;
}

nlohmann::ordered_json to_json(const SynthConfig& cfg) {
  return {
      {"generations", cfg.generations},
      {"founders", cfg.founders},
      {"infant_mortality", cfg.infant_mortality},
      {"adult_mode", cfg.adult_mode},
      {"adult_spread", cfg.adult_spread},
      {"adult_skew", cfg.adult_skew},
      {"adult_minimum", cfg.adult_minimum},
      {"parent_child_slope", cfg.parent_child_slope},
      {"spouse_corr", cfg.spouse_corr},
      {"mean_children", cfg.mean_children},
      {"missing_rate", cfg.missing_rate},
      {"private_rate", cfg.private_rate},
      {"first_birth_year", cfg.first_birth_year},
      {"founder_birth_span", cfg.founder_birth_span},
      {"us_fraction", cfg.us_fraction},
      {"seed", cfg.seed},
  };
}

Population simulate_population(const SynthConfig& cfg) {
  cfg.validate();
  return Simulator(cfg).run();
}

PartialDate death_date(const PartialDate& birth, double lifespan_years) {
  using namespace std::chrono;
  const sys_days start{year_month_day{std::chrono::year{birth.year}, month{*birth.month}, day{*birth.day}}};
  const auto elapsed = days{static_cast<int>(std::floor(lifespan_years * kDaysPerYear))};
  const year_month_day ymd{start + elapsed};
  return {int(ymd.year()), static_cast<std::uint8_t>(unsigned(ymd.month())),
          static_cast<std::uint8_t>(unsigned(ymd.day()))};
}

std::vector<ProfileRecord> render_profiles(const Population& pop, const SynthConfig& cfg) {
  Rng mask(derive_seed(cfg.seed, 1));
  const std::size_t n = pop.people.size();
  std::vector<bool> hidden(n, false);
  if (cfg.private_rate > 0.0) {
    for (std::size_t i = 0; i < n; ++i) hidden[i] = mask.bernoulli(cfg.private_rate);
  }
  auto ids = [&](std::initializer_list<std::int32_t> people) {
    std::vector<std::string> out;
    for (auto p : people) {
      if (p != kNoPerson) out.push_back(person_id(static_cast<std::size_t>(p)));
    }
    return out;
  };

  std::vector<ProfileRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (hidden[i]) continue;
    const auto& p = pop.people[i];
    ProfileRecord r;
    r.id = person_id(i);
    const auto& given = p.gender == Gender::Male ? kMaleNames : kFemaleNames;
    r.full_name = std::string(given[mask.below(given.size())]) + " " + kSurnames[p.surname];
    r.gender = p.gender;
    r.birth = p.birth;
    r.death = death_date(p.birth, p.lifespan);
    r.birth_location = location_name(p.location);
    r.death_location = r.birth_location;
    if (cfg.missing_rate > 0.0) {
      if (mask.bernoulli(cfg.missing_rate)) r.gender = Gender::Unknown;
      if (mask.bernoulli(cfg.missing_rate)) r.birth.reset();
      if (mask.bernoulli(cfg.missing_rate)) r.death.reset();
      if (mask.bernoulli(cfg.missing_rate)) r.birth_location.reset();
      if (mask.bernoulli(cfg.missing_rate)) r.death_location.reset();
    }
    r.parent_ids = ids({p.father, p.mother});
    for (auto c : pop.children[i]) r.child_ids.push_back(person_id(static_cast<std::size_t>(c)));
    r.spouse_ids = ids({p.spouse});
    if (p.mother != kNoPerson) {
      for (auto s : pop.children[static_cast<std::size_t>(p.mother)]) {
        if (static_cast<std::size_t>(s) != i) r.sibling_ids.push_back(person_id(static_cast<std::size_t>(s)));
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ProfileRecord> generate_population(const SynthConfig& cfg) {
  return render_profiles(simulate_population(cfg), cfg);
}

}  // namespace lifegraph
