#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lifegraph {

/// A calendar date where month and day may be unknown.
///
/// Invariants: `day` set implies `month` set, and when all three parts are
/// present they form a valid proleptic Gregorian date. Use `is_valid()` to
/// check values built by hand; `parse_date` never returns an invalid one.
struct PartialDate {
  int year = 0;
  std::optional<std::uint8_t> month;
  std::optional<std::uint8_t> day;

  bool is_complete() const noexcept { return month.has_value() && day.has_value(); }
  bool is_valid() const noexcept;

  friend bool operator==(const PartialDate&, const PartialDate&) = default;
  friend auto operator<=>(const PartialDate&, const PartialDate&) = default;
};

/// Parses ISO ("YYYY", "YYYY-MM", "YYYY-MM-DD") and GEDCOM ("DD MON YYYY",
/// "MON YYYY", "YYYY") forms. Qualified dates ("ABT 1850", "BEF ...",
/// "BET ... AND ...") and anything unparseable yield nullopt.
std::optional<PartialDate> parse_date(std::string_view text);

/// Canonical ISO rendering: "1948", "1948-11" or "1948-11-14".
std::string format_date(const PartialDate& date);

/// Days since 1970-01-01; requires a complete date.
std::int64_t days_since_epoch(const PartialDate& date);

inline constexpr double kDaysPerYear = 365.2425;

/// Age at death in years: exact fractional years when both dates are
/// complete, otherwise the difference of the years. nullopt when either date
/// is missing. The result is not range-checked.
std::optional<double> lifespan_years(const std::optional<PartialDate>& birth,
                                     const std::optional<PartialDate>& death);

}  // namespace lifegraph
