#include "lifegraph/country.hpp"

#include <array>
#include <cctype>
#include <string>
#include <utility>

namespace lifegraph {
namespace {

struct Alias {
  std::string_view name;  // lower case
  Country country;
};

constexpr std::array kCountries = {
    Country::UnitedStates, Country::Canada,      Country::UnitedKingdom, Country::Ireland,
    Country::Germany,      Country::France,      Country::Netherlands,   Country::Belgium,
    Country::Switzerland,  Country::Italy,       Country::Spain,         Country::Sweden,
    Country::Norway,       Country::Denmark,     Country::Finland,       Country::Poland,
    Country::Australia,    Country::NewZealand,  Country::SouthAfrica,   Country::Mexico,
};

constexpr std::array<std::string_view, kCountries.size()> kTags = {
    "UnitedStates", "Canada",  "UnitedKingdom", "Ireland", "Germany",   "France",     "Netherlands",
    "Belgium",      "Switzerland", "Italy",     "Spain",   "Sweden",    "Norway",     "Denmark",
    "Finland",      "Poland",  "Australia",     "NewZealand", "SouthAfrica", "Mexico",
};

constexpr Alias kAliases[] = {
    {"united states", Country::UnitedStates},
    {"united states of america", Country::UnitedStates},
    {"usa", Country::UnitedStates},
    {"u.s.a.", Country::UnitedStates},
    {"us", Country::UnitedStates},
    {"u.s.", Country::UnitedStates},
    {"america", Country::UnitedStates},
    {"colonial america", Country::UnitedStates},
    {"british colonial america", Country::UnitedStates},
    {"british america", Country::UnitedStates},
    {"new england", Country::UnitedStates},
    {"canada", Country::Canada},
    {"new france", Country::Canada},
    {"united kingdom", Country::UnitedKingdom},
    {"uk", Country::UnitedKingdom},
    {"great britain", Country::UnitedKingdom},
    {"britain", Country::UnitedKingdom},
    {"england", Country::UnitedKingdom},
    {"scotland", Country::UnitedKingdom},
    {"wales", Country::UnitedKingdom},
    {"northern ireland", Country::UnitedKingdom},
    {"ireland", Country::Ireland},
    {"germany", Country::Germany},
    {"deutschland", Country::Germany},
    {"prussia", Country::Germany},
    {"holy roman empire", Country::Germany},
    {"france", Country::France},
    {"netherlands", Country::Netherlands},
    {"the netherlands", Country::Netherlands},
    {"holland", Country::Netherlands},
    {"belgium", Country::Belgium},
    {"switzerland", Country::Switzerland},
    {"italy", Country::Italy},
    {"spain", Country::Spain},
    {"sweden", Country::Sweden},
    {"norway", Country::Norway},
    {"denmark", Country::Denmark},
    {"finland", Country::Finland},
    {"poland", Country::Poland},
    {"australia", Country::Australia},
    {"new zealand", Country::NewZealand},
    {"south africa", Country::SouthAfrica},
    {"mexico", Country::Mexico},
};

constexpr std::string_view kUsStates[] = {
    "alabama",        "alaska",       "arizona",       "arkansas",       "california",
    "colorado",       "connecticut",  "delaware",      "florida",        "georgia",
    "hawaii",         "idaho",        "illinois",      "indiana",        "iowa",
    "kansas",         "kentucky",     "louisiana",     "maine",          "maryland",
    "massachusetts",  "michigan",     "minnesota",     "mississippi",    "missouri",
    "montana",        "nebraska",     "nevada",        "new hampshire",  "new jersey",
    "new mexico",     "new york",     "north carolina", "north dakota",  "ohio",
    "oklahoma",       "oregon",       "pennsylvania",  "rhode island",   "south carolina",
    "south dakota",   "tennessee",    "texas",         "utah",           "vermont",
    "virginia",       "washington",   "west virginia", "wisconsin",      "wyoming",
    "district of columbia", "massachusetts bay",
};

std::string normalized(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(uc)));
  }
  while (!out.empty() && out.back() == '.' && out != "u.s." && out != "u.s.a.") out.pop_back();
  return out;
}

bool strip_prefix(std::string& s, std::string_view prefix) {
  if (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0) {
    s.erase(0, prefix.size());
    return true;
  }
  return false;
}

bool strip_suffix(std::string& s, std::string_view suffix) {
  if (s.size() > suffix.size() &&
      s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
    s.erase(s.size() - suffix.size());
    return true;
  }
  return false;
}

bool is_us_state(std::string token) {
  for (std::string_view prefix :
       {"colony of ", "province of ", "state of ", "commonwealth of ", "territory of "}) {
    if (strip_prefix(token, prefix)) break;
  }
  for (std::string_view suffix : {" colony", " territory", " province"}) {
    if (strip_suffix(token, suffix)) break;
  }
  for (auto state : kUsStates) {
    if (token == state) return true;
  }
  return false;
}

std::optional<Country> lookup_alias(const std::string& token) {
  for (const auto& alias : kAliases) {
    if (alias.name == token) return alias.country;
  }
  return std::nullopt;
}

}  // namespace

std::span<const Country> all_countries() noexcept { return kCountries; }

std::string_view country_tag(Country c) noexcept {
  return kTags[static_cast<std::size_t>(c)];
}

std::optional<Country> parse_country_tag(std::string_view text) {
  const std::string key = normalized(text);
  for (std::size_t i = 0; i < kTags.size(); ++i) {
    if (normalized(kTags[i]) == key) return kCountries[i];
  }
  std::string spaced = key;
  for (char& c : spaced) {
    if (c == '-' || c == '_') c = ' ';
  }
  return lookup_alias(spaced);
}

std::optional<Country> normalize_country(std::optional<std::string_view> location) {
  if (!location) return std::nullopt;
  std::string_view last = *location;
  while (!last.empty() &&
         (last.back() == ',' || std::isspace(static_cast<unsigned char>(last.back())))) {
    last.remove_suffix(1);
  }
  if (const auto comma = last.rfind(','); comma != std::string_view::npos) {
    last = last.substr(comma + 1);
  }
  const std::string token = normalized(last);
  if (token.empty()) return std::nullopt;
  if (auto country = lookup_alias(token)) return country;
  if (is_us_state(token)) return Country::UnitedStates;
  return std::nullopt;
}

}  // namespace lifegraph
