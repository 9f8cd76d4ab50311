#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace lifegraph {

/// Countries recognised by the location alias table.
enum class Country : unsigned char {
  UnitedStates,
  Canada,
  UnitedKingdom,
  Ireland,
  Germany,
  France,
  Netherlands,
  Belgium,
  Switzerland,
  Italy,
  Spain,
  Sweden,
  Norway,
  Denmark,
  Finland,
  Poland,
  Australia,
  NewZealand,
  SouthAfrica,
  Mexico,
};

std::span<const Country> all_countries() noexcept;

/// Stable CamelCase tag used in CSV output, e.g. "UnitedStates".
std::string_view country_tag(Country c) noexcept;

/// Accepts a tag ("UnitedStates"), a short code ("us") or any alias from the
/// location table, case-insensitively.
std::optional<Country> parse_country_tag(std::string_view text);

/// Maps a free-text location to a country from its last comma-separated
/// token. US state names (optionally wrapped as "Colony of X", "Province of
/// X", "X Colony", "X Territory") count as the United States.
std::optional<Country> normalize_country(std::optional<std::string_view> location);

}  // namespace lifegraph
