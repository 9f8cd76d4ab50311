#include "lifegraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lifegraph/csv.hpp"
#include "lifegraph/error.hpp"

namespace lifegraph {
namespace {

void require_birth_year(const FeatureTable& table) {
  if (!table.has_column(Feature::BirthYear)) {
    throw DataError("lifespan statistics need the birth_year column");
  }
}

}  // namespace

DistributionSeries lifespan_distribution(const FeatureTable& table, int quarter_start) {
  if (quarter_start < kFirstQuarter || quarter_start > kLastQuarter ||
      (quarter_start - kFirstQuarter) % 25 != 0) {
    throw DataError("quarter start must be one of 1650, 1675, ..., 1875 (got " +
                    std::to_string(quarter_start) + ")");
  }
  require_birth_year(table);
  DistributionSeries s;
  s.quarter_start = quarter_start;
  for (const auto& row : table.rows()) {
    const auto& fv = row.features;
    if (!fv.birth_year || !fv.age_of_death) continue;
    if (*fv.birth_year < quarter_start || *fv.birth_year > quarter_start + 24) continue;
    const double age = std::floor(*fv.age_of_death);
    if (age < 0 || age > kMaxAgeBin) continue;
    ++s.counts[static_cast<std::size_t>(age)];
    ++s.n;
  }
  if (s.n > 0) {
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
      s.percents[i] = 100.0 * static_cast<double>(s.counts[i]) / static_cast<double>(s.n);
    }
  }
  return s;
}

double median_of(std::vector<double>& values) {
  if (values.empty()) throw InsufficientDataError("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

TrendSeries yearly_central_tendency(const FeatureTable& table, int first_year, int last_year,
                                    std::optional<Gender> gender) {
  if (first_year > last_year) {
    throw DataError("empty year range " + std::to_string(first_year) + ".." +
                    std::to_string(last_year));
  }
  require_birth_year(table);
  if (gender && !table.has_column(Feature::Gender)) {
    throw DataError("gender filter needs the gender column");
  }
  const std::size_t span = static_cast<std::size_t>(last_year - first_year) + 1;
  std::vector<std::vector<double>> by_year(span);
  for (const auto& row : table.rows()) {
    const auto& fv = row.features;
    if (!fv.birth_year || !fv.age_of_death) continue;
    if (*fv.birth_year < first_year || *fv.birth_year > last_year) continue;
    if (gender && fv.gender_code != gender_code(*gender)) continue;
    by_year[static_cast<std::size_t>(*fv.birth_year - first_year)].push_back(*fv.age_of_death);
  }
  TrendSeries out;
  out.gender = gender;
  out.rows.reserve(span);
  for (std::size_t i = 0; i < span; ++i) {
    auto& sample = by_year[i];
    TrendRow row;
    row.year = first_year + static_cast<int>(i);
    row.n = static_cast<long long>(sample.size());
    if (!sample.empty()) {
      double sum = 0.0;
      for (double a : sample) sum += a;
      row.mean = sum / static_cast<double>(sample.size());
      row.median = median_of(sample);
    }
    out.rows.push_back(row);
  }
  return out;
}

void write_distribution_csv(std::ostream& out, const DistributionSeries& series) {
  CsvWriter w(out);
  w.row({"age", "count", "percent"});
  for (std::size_t age = 0; age < series.counts.size(); ++age) {
    w.field(static_cast<long long>(age)).field(series.counts[age]).field(series.percents[age]);
    w.end_row();
  }
}

void write_trend_csv(std::ostream& out, const TrendSeries& series) {
  CsvWriter w(out);
  w.row({"year", "n", "mean", "median"});
  for (const auto& row : series.rows) {
    w.field(static_cast<long long>(row.year)).field(row.n);
    if (row.mean) {
      w.field(*row.mean).field(*row.median);
    } else {
      w.empty().empty();
    }
    w.end_row();
  }
}

}  // namespace lifegraph
