#pragma once

#include <span>
#include <string>
#include <vector>

namespace lifegraph {

struct SimpleFit {
  double alpha = 0.0;
  double beta = 0.0;
  double r_squared = 0.0;
  double p_value = 1.0;  // two-sided t test on beta, df = n - 2
  double beta_std_error = 0.0;
  double t_statistic = 0.0;
  std::size_t n = 0;
};

/// Least squares y = alpha + beta * x. Throws InsufficientDataError for
/// n < 3 and DegenerateInputError when x is constant. A constant y gives
/// beta 0, R² 0 and p 1.
SimpleFit simple_ols(std::span<const double> x, std::span<const double> y);

struct Coefficient {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t_value = 0.0;
  double p_value = 1.0;
};

struct MultiFit {
  Coefficient intercept;
  std::vector<Coefficient> predictors;
  double multiple_r_squared = 0.0;
  double adjusted_r_squared = 0.0;
  double rse = 0.0;  // residual standard error, df = n - p - 1
  double f_statistic = 0.0;
  double f_p_value = 1.0;
  std::size_t n = 0;
  std::size_t df_residual = 0;
};

struct Predictor {
  std::string name;
  std::vector<double> values;
};

/// Least squares with an intercept, via Householder QR of the design
/// matrix. Throws InsufficientDataError unless n > p + 1 and
/// RankDeficientError (naming the dependent columns) when a predictor is a
/// linear combination of the intercept and earlier predictors.
MultiFit multiple_ols(std::span<const Predictor> predictors, std::span<const double> y);

struct EliminationStep {
  std::string removed;
  double p_value = 0.0;
};

struct StepwiseResult {
  MultiFit fit;
  std::vector<EliminationStep> trace;
  /// Predictors dropped up front as linear combinations of others (only
  /// when the caller asked for it).
  std::vector<std::string> aliased;
};

/// Backward elimination: refit and drop the predictor with the largest
/// coefficient p-value while that p-value exceeds alpha_out. Ties go to
/// the earliest column.
StepwiseResult backward_stepwise(std::span<const Predictor> predictors, std::span<const double> y,
                                 double alpha_out = 0.05);

double adjusted_r_squared(double r_squared, std::size_t n, std::size_t p);

/// Display form of a p-value: "<2.2e-16" below that bound, else 4 significant digits.
std::string format_p_value(double p);

}  // namespace lifegraph
