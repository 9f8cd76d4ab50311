#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lifegraph/features.hpp"
#include "lifegraph/profile.hpp"

namespace lifegraph {

inline constexpr int kMaxAgeBin = 122;
inline constexpr int kFirstQuarter = 1650;
inline constexpr int kLastQuarter = 1875;

/// Age-of-death histogram (integer ages 0..122, floored) of one
/// quarter-century birth cohort [quarter_start, quarter_start + 24].
struct DistributionSeries {
  int quarter_start = 0;
  std::array<long long, kMaxAgeBin + 1> counts{};
  std::array<double, kMaxAgeBin + 1> percents{};
  long long n = 0;
};

/// quarter_start must be one of 1650, 1675, ..., 1875 (DataError otherwise).
/// Uses rows with both birth_year and age_of_death present.
DistributionSeries lifespan_distribution(const FeatureTable& table, int quarter_start);

struct TrendRow {
  int year = 0;
  long long n = 0;
  std::optional<double> mean;
  std::optional<double> median;
};

struct TrendSeries {
  std::optional<Gender> gender;
  std::vector<TrendRow> rows;
};

/// Mean and median age_of_death of each birth year in [first_year,
/// last_year], optionally for one gender. DataError when first_year > last_year.
TrendSeries yearly_central_tendency(const FeatureTable& table, int first_year, int last_year,
                                    std::optional<Gender> gender = std::nullopt);

/// Median with the even-n midpoint rule; the input is reordered.
double median_of(std::vector<double>& values);

/// CSV columns: age,count,percent
void write_distribution_csv(std::ostream& out, const DistributionSeries& series);

/// CSV columns: year,n,mean,median (mean/median empty when n = 0)
void write_trend_csv(std::ostream& out, const TrendSeries& series);

}  // namespace lifegraph
