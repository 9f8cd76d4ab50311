#pragma once

namespace lifegraph {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
/// evaluated by continued fraction (relative accuracy about 1e-14 away
/// from extreme parameters).
double regularized_incomplete_beta(double a, double b, double x);

/// Student t CDF with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// P(|T| >= |t|) for T ~ t(df).
double student_t_two_sided_p(double t, double df);

/// P(F >= f) for F ~ F(d1, d2).
double f_upper_tail_p(double f, double d1, double d2);

}  // namespace lifegraph
