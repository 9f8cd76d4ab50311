#include "lifegraph/regress.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Dense>

#include "lifegraph/error.hpp"
#include "lifegraph/special_functions.hpp"

namespace lifegraph {
namespace {

constexpr double kRankTolerance = 1e-10;

void require_finite(std::span<const double> values, const std::string& what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError(what + " contains a non-finite value");
  }
}

bool all_equal(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; });
}

double two_sided_p(double estimate, double std_error, double df) {
  if (std_error == 0.0) return estimate == 0.0 ? 1.0 : 0.0;
  return student_t_two_sided_p(estimate / std_error, df);
}

Eigen::MatrixXd design_matrix(std::span<const Predictor> predictors, std::size_t n) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(predictors.size() + 1));
  X.col(0).setOnes();
  for (std::size_t j = 0; j < predictors.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) = predictors[j].values[i];
    }
  }
  return X;
}

// Scales every column to unit Euclidean norm; zero columns keep scale 1.
Eigen::VectorXd normalize_columns(Eigen::MatrixXd& X) {
  Eigen::VectorXd scale(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double norm = X.col(j).norm();
    scale(j) = norm > 0.0 ? norm : 1.0;
    X.col(j) /= scale(j);
  }
  return scale;
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& scaled) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(kRankTolerance);
  return qr.rank();
}

// Names the predictors that lie in the span of the intercept and the
// predictors accepted before them.
std::vector<std::string> dependent_columns(const Eigen::MatrixXd& scaled,
                                           std::span<const Predictor> predictors) {
  std::vector<Eigen::Index> accepted = {0};
  std::vector<std::string> dependent;
  for (std::size_t j = 0; j < predictors.size(); ++j) {
    Eigen::MatrixXd trial(scaled.rows(), static_cast<Eigen::Index>(accepted.size() + 1));
    for (std::size_t k = 0; k < accepted.size(); ++k) {
      trial.col(static_cast<Eigen::Index>(k)) = scaled.col(accepted[k]);
    }
    trial.col(trial.cols() - 1) = scaled.col(static_cast<Eigen::Index>(j + 1));
    if (numerical_rank(trial) < trial.cols()) {
      dependent.push_back(predictors[j].name);
    } else {
      accepted.push_back(static_cast<Eigen::Index>(j + 1));
    }
  }
  return dependent;
}

}  // namespace

SimpleFit simple_ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("x and y differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw InsufficientDataError("simple regression needs at least 3 observations");
  require_finite(x, "x");
  require_finite(y, "y");
  if (all_equal(x)) throw DegenerateInputError("x has zero variance");

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DegenerateInputError("x has zero variance");

  SimpleFit fit;
  fit.n = n;
  if (all_equal(y)) {
    fit.alpha = y[0];
    return fit;
  }
  fit.beta = sxy / sxx;
  fit.alpha = my - fit.beta * mx;
  fit.r_squared = std::min(1.0, (sxy / sxx) * (sxy / syy));
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - fit.alpha - fit.beta * x[i];
    rss += e * e;
  }
  const double df = static_cast<double>(n - 2);
  fit.beta_std_error = std::sqrt(rss / df / sxx);
  if (fit.beta_std_error > 0.0) {
    fit.t_statistic = fit.beta / fit.beta_std_error;
  } else if (fit.beta != 0.0) {
    fit.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), fit.beta);
  }
  fit.p_value = two_sided_p(fit.beta, fit.beta_std_error, df);
  return fit;
}

double adjusted_r_squared(double r_squared, std::size_t n, std::size_t p) {
  if (n <= p + 1) throw InsufficientDataError("adjusted R-squared needs n > p + 1");
  return 1.0 - (1.0 - r_squared) * static_cast<double>(n - 1) / static_cast<double>(n - p - 1);
}

MultiFit multiple_ols(std::span<const Predictor> predictors, std::span<const double> y) {
  const std::size_t n = y.size();
  const std::size_t p = predictors.size();
  for (const auto& pred : predictors) {
    if (pred.values.size() != n) {
      throw DataError("predictor '" + pred.name + "' differs in length from the response");
    }
    require_finite(pred.values, "predictor '" + pred.name + "'");
  }
  require_finite(y, "response");
  if (n <= p + 1) {
    throw InsufficientDataError("multiple regression with " + std::to_string(p) +
                                " predictors needs more than " + std::to_string(p + 1) +
                                " observations");
  }

  const Eigen::MatrixXd X = design_matrix(predictors, n);
  Eigen::MatrixXd scaled = X;
  const Eigen::VectorXd scale = normalize_columns(scaled);
  const auto k = static_cast<Eigen::Index>(p + 1);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < k) {
    auto cols = dependent_columns(scaled, predictors);
    std::string names;
    for (const auto& c : cols) names += (names.empty() ? "" : ", ") + c;
    throw RankDeficientError("design matrix is rank deficient; collinear columns: " + names,
                             std::move(cols));
  }
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd scaled_coef = qr.solve(yv);
  const Eigen::VectorXd coef = scaled_coef.cwiseQuotient(scale);

  const Eigen::VectorXd residuals = yv - X * coef;
  const double rss = residuals.squaredNorm();
  const double mean_y = yv.mean();
  const double tss = (yv.array() - mean_y).square().sum();
  const double df = static_cast<double>(n - p - 1);

  // (X'X)^-1 of the scaled problem from R, then undo scaling and pivoting.
  const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd cov_permuted = r_inv * r_inv.transpose();
  const Eigen::MatrixXd cov_scaled =
      qr.colsPermutation() * cov_permuted * qr.colsPermutation().transpose();

  MultiFit fit;
  fit.n = n;
  fit.df_residual = n - p - 1;
  const double sigma2 = rss / df;
  fit.rse = std::sqrt(sigma2);
  auto coefficient = [&](Eigen::Index j, std::string name) {
    Coefficient c;
    c.name = std::move(name);
    c.estimate = coef(j);
    c.std_error = std::sqrt(std::max(0.0, sigma2 * cov_scaled(j, j))) / scale(j);
    c.t_value = c.std_error > 0.0 ? c.estimate / c.std_error
                                  : (c.estimate == 0.0 ? 0.0
                                                       : std::copysign(std::numeric_limits<double>::infinity(), c.estimate));
    c.p_value = two_sided_p(c.estimate, c.std_error, df);
    return c;
  };
  fit.intercept = coefficient(0, "(Intercept)");
  for (std::size_t j = 0; j < p; ++j) {
    fit.predictors.push_back(coefficient(static_cast<Eigen::Index>(j + 1), predictors[j].name));
  }

  if (tss > 0.0) {
    fit.multiple_r_squared = std::clamp(1.0 - rss / tss, 0.0, 1.0);
  }
  fit.adjusted_r_squared = adjusted_r_squared(fit.multiple_r_squared, n, p);
  if (p > 0 && tss > 0.0) {
    const double explained = std::max(0.0, tss - rss);
    if (rss > 0.0) {
      fit.f_statistic = (explained / static_cast<double>(p)) / sigma2;
      fit.f_p_value = f_upper_tail_p(fit.f_statistic, static_cast<double>(p), df);
    } else {
      fit.f_statistic = std::numeric_limits<double>::infinity();
      fit.f_p_value = 0.0;
    }
  }
  return fit;
}

StepwiseResult backward_stepwise(std::span<const Predictor> predictors, std::span<const double> y,
                                 double alpha_out) {
  if (!(alpha_out >= 0.0 && alpha_out <= 1.0)) throw DataError("alpha_out must lie in [0, 1]");
  std::vector<Predictor> current(predictors.begin(), predictors.end());
  StepwiseResult result;
  for (;;) {
    result.fit = multiple_ols(current, y);
    std::size_t worst = current.size();
    double worst_p = alpha_out;
    for (std::size_t j = 0; j < current.size(); ++j) {
      const double pv = result.fit.predictors[j].p_value;
      if (pv > worst_p) {
        worst_p = pv;
        worst = j;
      }
    }
    if (worst == current.size()) return result;
    result.trace.push_back({current[worst].name, worst_p});
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(worst));
  }
}

std::string format_p_value(double p) {
  if (p < 2.2e-16) return "<2.2e-16";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", p);
  return buf;
}

}  // namespace lifegraph
