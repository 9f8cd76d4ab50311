#include "lifegraph/partial_date.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <vector>

namespace lifegraph {
namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "JAN", "FEB", "MAR", "APR", "MAY", "JUN", "JUL", "AUG", "SEP", "OCT", "NOV", "DEC"};

// Date modifiers that make a GEDCOM date imprecise or a range.
constexpr std::array<std::string_view, 14> kQualifiers = {
    "ABT", "ABOUT", "BEF", "BEFORE", "AFT", "AFTER", "EST",
    "CAL", "BET", "AND", "FROM", "TO", "INT", "CIRCA"};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<int> to_int(std::string_view s, std::size_t min_len, std::size_t max_len) {
  if (s.size() < min_len || s.size() > max_len || !all_digits(s)) return std::nullopt;
  int value = 0;
  std::from_chars(s.data(), s.data() + s.size(), value);
  return value;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) tokens.push_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::optional<int> month_from_name(std::string_view token) {
  for (std::size_t m = 0; m < kMonthNames.size(); ++m) {
    if (token == kMonthNames[m]) return static_cast<int>(m + 1);
  }
  return std::nullopt;
}

std::optional<PartialDate> make(int year, std::optional<int> month, std::optional<int> day) {
  if (year < 1) return std::nullopt;
  PartialDate date{year, std::nullopt, std::nullopt};
  if (month) {
    if (*month < 1 || *month > 12) return std::nullopt;
    date.month = static_cast<std::uint8_t>(*month);
  }
  if (day) {
    if (*day < 1 || *day > 31) return std::nullopt;
    date.day = static_cast<std::uint8_t>(*day);
  }
  if (!date.is_valid()) return std::nullopt;
  return date;
}

std::optional<PartialDate> parse_iso(std::string_view s) {
  auto year = to_int(s.substr(0, 4), 4, 4);
  if (!year) return std::nullopt;
  if (s.size() == 4) return make(*year, std::nullopt, std::nullopt);
  if (s.size() == 7 && s[4] == '-') {
    auto month = to_int(s.substr(5, 2), 2, 2);
    if (!month) return std::nullopt;
    return make(*year, month, std::nullopt);
  }
  if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
    auto month = to_int(s.substr(5, 2), 2, 2);
    auto day = to_int(s.substr(8, 2), 2, 2);
    if (!month || !day) return std::nullopt;
    return make(*year, month, day);
  }
  return std::nullopt;
}

std::optional<PartialDate> parse_gedcom(std::string_view s) {
  const std::string text = upper(s);
  const auto tokens = split_ws(text);
  if (tokens.empty() || tokens.size() > 3) return std::nullopt;
  for (auto token : tokens) {
    for (auto q : kQualifiers) {
      if (token == q) return std::nullopt;
    }
  }
  auto year = to_int(tokens.back(), 1, 4);
  if (!year) return std::nullopt;
  if (tokens.size() == 1) return make(*year, std::nullopt, std::nullopt);
  auto month = month_from_name(tokens[tokens.size() - 2]);
  if (!month) return std::nullopt;
  if (tokens.size() == 2) return make(*year, month, std::nullopt);
  auto day = to_int(tokens[0], 1, 2);
  if (!day) return std::nullopt;
  return make(*year, month, day);
}

}  // namespace

bool PartialDate::is_valid() const noexcept {
  if (year < 1 || year > 9999) return false;
  if (day && !month) return false;
  if (month && (*month < 1 || *month > 12)) return false;
  if (day) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{*month},
                             std::chrono::day{*day}};
    return ymd.ok();
  }
  return true;
}

std::optional<PartialDate> parse_date(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty()) return std::nullopt;
  if (text.size() >= 4 && all_digits(text.substr(0, 4)) &&
      (text.size() == 4 || text[4] == '-')) {
    return parse_iso(text);
  }
  return parse_gedcom(text);
}

std::string format_date(const PartialDate& date) {
  char buf[16];
  if (date.month && date.day) {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", date.year, int{*date.month}, int{*date.day});
  } else if (date.month) {
    std::snprintf(buf, sizeof buf, "%04d-%02d", date.year, int{*date.month});
  } else {
    std::snprintf(buf, sizeof buf, "%04d", date.year);
  }
  return buf;
}

std::int64_t days_since_epoch(const PartialDate& date) {
  using namespace std::chrono;
  const sys_days days{std::chrono::year{date.year} / std::chrono::month{date.month.value()} /
                      std::chrono::day{date.day.value()}};
  return days.time_since_epoch().count();
}

std::optional<double> lifespan_years(const std::optional<PartialDate>& birth,
                                     const std::optional<PartialDate>& death) {
  if (!birth || !death) return std::nullopt;
  if (birth->is_complete() && death->is_complete()) {
    return static_cast<double>(days_since_epoch(*death) - days_since_epoch(*birth)) /
           kDaysPerYear;
  }
  return static_cast<double>(death->year - birth->year);
}

}  // namespace lifegraph
