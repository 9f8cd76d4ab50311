#pragma once

// Independent reference computations for regression checks.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace lifegraph::testing {

/// Solves (X'X) b = X'y by Gauss-Jordan elimination with partial pivoting in
/// long double. X gets a leading column of ones. Returns intercept first.
inline std::vector<double> normal_equations(const std::vector<std::vector<double>>& columns,
                                            std::span<const double> y) {
  const std::size_t n = y.size();
  const std::size_t k = columns.size() + 1;
  auto x = [&](std::size_t row, std::size_t col) -> long double {
    return col == 0 ? 1.0L : static_cast<long double>(columns[col - 1][row]);
  };
  std::vector<std::vector<long double>> a(k, std::vector<long double>(k + 1, 0.0L));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t r = 0; r < n; ++r) a[i][j] += x(r, i) * x(r, j);
    }
    for (std::size_t r = 0; r < n; ++r) a[i][k] += x(r, i) * static_cast<long double>(y[r]);
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    }
    if (a[pivot][c] == 0.0L) throw std::runtime_error("singular normal equations");
    std::swap(a[c], a[pivot]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<double> b(k);
  for (std::size_t i = 0; i < k; ++i) b[i] = static_cast<double>(a[i][k] / a[i][i]);
  return b;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

inline double boost_t_two_sided(double t, double df) {
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

inline double boost_f_upper(double f, double d1, double d2) {
  boost::math::fisher_f dist(d1, d2);
  return boost::math::cdf(boost::math::complement(dist, f));
}

}  // namespace lifegraph::testing
