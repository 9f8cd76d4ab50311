#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "lifegraph/analysis.hpp"
#include "lifegraph/error.hpp"
#include "lifegraph/random.hpp"
#include "lifegraph/regress.hpp"
#include "lifegraph/special_functions.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lifegraph;
using lifegraph::testing::normal_equations;

namespace {

std::vector<double> noise(Rng& rng, std::size_t n, double sd = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = sd * rng.normal();
  return v;
}

}  // namespace

TEST_CASE("incomplete beta and distribution tails against boost") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double a = 0.05 + rng.uniform() * 200.0;
    const double b = 0.05 + rng.uniform() * 200.0;
    const double x = rng.uniform();
    const double expected = boost::math::ibeta(a, b, x);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(x);
    CHECK(std::fabs(regularized_incomplete_beta(a, b, x) - expected) <= 1e-10 * expected + 1e-300);
  }
  CHECK(regularized_incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2, 3, 1.0) == 1.0);
  for (double df : {1.0, 2.0, 5.0, 30.0, 498.0, 1e5}) {
    for (double t : {0.0, 0.3, 1.0, 2.5, 6.0, 12.0}) {
      CHECK(student_t_two_sided_p(t, df) == doctest::Approx(lifegraph::testing::boost_t_two_sided(t, df)).epsilon(1e-10));
      CHECK(student_t_two_sided_p(-t, df) == student_t_two_sided_p(t, df));
    }
  }
  for (double d1 : {1.0, 3.0, 8.0}) {
    for (double d2 : {5.0, 100.0, 2000.0}) {
      for (double f : {0.1, 1.0, 4.0, 20.0}) {
        CHECK(f_upper_tail_p(f, d1, d2) == doctest::Approx(lifegraph::testing::boost_f_upper(f, d1, d2)).epsilon(1e-10));
      }
    }
  }
  CHECK(student_t_cdf(0.0, 7.0) == doctest::Approx(0.5));
}

TEST_CASE("simple regression examples") {
  const std::vector<double> x{1, 2, 3};
  const std::vector<double> y{2, 4, 6};
  const auto fit = simple_ols(x, y);
  CHECK(fit.beta == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.alpha == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n == 3);

  const std::vector<double> x2{0, 1, 2};
  const std::vector<double> y2{0, 1, 0};
  const auto flat = simple_ols(x2, y2);
  CHECK(flat.beta == doctest::Approx(0.0).scale(1).epsilon(1e-15));
  CHECK(flat.r_squared == doctest::Approx(0.0).scale(1).epsilon(1e-15));
  CHECK(flat.p_value == doctest::Approx(1.0));
}

TEST_CASE("simple regression errors and constant y") {
  const std::vector<double> two{1, 2};
  CHECK_THROWS_AS(simple_ols(two, two), InsufficientDataError);
  const std::vector<double> constant{4, 4, 4, 4};
  const std::vector<double> y{1, 2, 3, 4};
  CHECK_THROWS_AS(simple_ols(constant, y), DegenerateInputError);
  const auto fit = simple_ols(y, constant);
  CHECK(fit.beta == 0.0);
  CHECK(fit.r_squared == 0.0);
  CHECK(fit.p_value == 1.0);
  const std::vector<double> short_y{1, 2, 3};
  CHECK_THROWS_AS(simple_ols(y, short_y), DataError);
}

TEST_CASE("simple regression agrees with the oracles") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng.below(60);
    auto x = noise(rng, n, 1.0 + 10 * rng.uniform());
    std::vector<double> y(n);
    const double slope = rng.normal();
    for (std::size_t i = 0; i < n; ++i) y[i] = 3.0 + slope * x[i] + rng.normal();
    const auto fit = simple_ols(x, y);
    const auto b = normal_equations({x}, y);
    CHECK(fit.alpha == doctest::Approx(b[0]).epsilon(1e-9).scale(1));
    CHECK(fit.beta == doctest::Approx(b[1]).epsilon(1e-9).scale(1));
    const double r = lifegraph::testing::pearson(x, y);
    CHECK(std::fabs(fit.r_squared - r * r) < 1e-12);
    const double p = lifegraph::testing::boost_t_two_sided(fit.t_statistic, static_cast<double>(n - 2));
    CHECK(fit.p_value == doctest::Approx(p).epsilon(1e-9).scale(1e-300));
    CHECK(fit.t_statistic == doctest::Approx(fit.beta / fit.beta_std_error));
  }
}

TEST_CASE("affine invariance of the simple fit") {
  Rng rng(4);
  auto x = noise(rng, 200);
  std::vector<double> y(200);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 1.0 + 0.3 * x[i] + rng.normal();
  const auto base = simple_ols(x, y);
  for (double k : {0.001, 3.0, 1e4}) {
    std::vector<double> scaled(x);
    for (auto& v : scaled) v = k * v + 17.0;
    const auto fit = simple_ols(scaled, y);
    CHECK(fit.beta * k == doctest::Approx(base.beta).epsilon(1e-9));
    CHECK(std::fabs(fit.r_squared - base.r_squared) < 1e-9);
    CHECK(std::fabs(fit.p_value - base.p_value) < 1e-9);
  }
}

TEST_CASE("multiple regression exact fit") {
  const std::vector<double> x1{1, 2, 3, 4, 5, 6};
  std::vector<double> y(x1.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 3 + 2 * x1[i];
  const std::vector<Predictor> preds{{"x1", x1}};
  const auto fit = multiple_ols(preds, y);
  CHECK(fit.intercept.estimate == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.predictors[0].estimate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.multiple_r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.rse == doctest::Approx(0.0).scale(1).epsilon(1e-10));
  CHECK(fit.n == 6);
  CHECK(fit.df_residual == 4);
}

TEST_CASE("multiple regression on five hand rows matches the normal equations") {
  const std::vector<double> x1{1, 2, 3, 4, 5};
  const std::vector<double> x2{2, 1, 4, 3, 7};
  const std::vector<double> y{3.1, 3.9, 7.2, 7.8, 12.5};
  const std::vector<Predictor> preds{{"a", x1}, {"b", x2}};
  const auto fit = multiple_ols(preds, y);
  const auto b = normal_equations({x1, x2}, y);
  CHECK(std::fabs(fit.intercept.estimate - b[0]) < 1e-9);
  CHECK(std::fabs(fit.predictors[0].estimate - b[1]) < 1e-9);
  CHECK(std::fabs(fit.predictors[1].estimate - b[2]) < 1e-9);
  CHECK(fit.predictors[0].name == "a");
  CHECK(fit.adjusted_r_squared <= fit.multiple_r_squared);
}

TEST_CASE("adjusted R squared formula") {
  CHECK(adjusted_r_squared(0.5, 100, 4) == doctest::Approx(1.0 - 0.5 * 99.0 / 95.0).epsilon(1e-15));
  CHECK(adjusted_r_squared(0.5, 100, 4) == doctest::Approx(0.4789).epsilon(1e-4));
}

TEST_CASE("multiple regression inference against boost and orthogonal residuals") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 1 + rng.below(4);
    const std::size_t n = p + 3 + rng.below(80);
    std::vector<Predictor> preds;
    std::vector<std::vector<double>> cols;
    for (std::size_t j = 0; j < p; ++j) {
      auto c = noise(rng, n, 1 + 5 * rng.uniform());
      preds.push_back({"x" + std::to_string(j), c});
      cols.push_back(c);
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = rng.normal() * 2;
      for (std::size_t j = 0; j < p; ++j) y[i] += (0.5 - rng.uniform()) * 0 + 0.4 * static_cast<double>(j) * cols[j][i];
    }
    const auto fit = multiple_ols(preds, y);
    const auto b = normal_equations(cols, y);
    CHECK(std::fabs(fit.intercept.estimate - b[0]) < 1e-9);
    for (std::size_t j = 0; j < p; ++j) CHECK(std::fabs(fit.predictors[j].estimate - b[j + 1]) < 1e-9);

    // Residuals are orthogonal to the intercept and to every column.
    std::vector<double> resid(n);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double yhat = fit.intercept.estimate;
      for (std::size_t j = 0; j < p; ++j) yhat += fit.predictors[j].estimate * cols[j][i];
      resid[i] = y[i] - yhat;
      rss += resid[i] * resid[i];
    }
    double norm_r = std::sqrt(rss);
    double dot0 = 0.0;
    for (double r : resid) dot0 += r;
    CHECK(std::fabs(dot0) / (norm_r * std::sqrt(static_cast<double>(n))) < 1e-8);
    for (std::size_t j = 0; j < p; ++j) {
      double dot = 0.0;
      double norm_c = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dot += resid[i] * cols[j][i];
        norm_c += cols[j][i] * cols[j][i];
      }
      CHECK(std::fabs(dot) / (norm_r * std::sqrt(norm_c)) < 1e-8);
    }

    const double df = static_cast<double>(n - p - 1);
    CHECK(fit.rse == doctest::Approx(std::sqrt(rss / df)).epsilon(1e-9));
    for (const auto& c : fit.predictors) {
      CHECK(c.p_value == doctest::Approx(lifegraph::testing::boost_t_two_sided(c.t_value, df)).epsilon(1e-9).scale(1e-300));
    }
    CHECK(fit.f_p_value == doctest::Approx(lifegraph::testing::boost_f_upper(fit.f_statistic, static_cast<double>(p), df))
                               .epsilon(1e-9)
                               .scale(1e-300));
    CHECK(fit.adjusted_r_squared == doctest::Approx(adjusted_r_squared(fit.multiple_r_squared, n, p)));
    CHECK(fit.adjusted_r_squared <= fit.multiple_r_squared);
    CHECK(fit.rse >= 0.0);
  }
}

TEST_CASE("multiple regression errors") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  const std::vector<double> c{0, 0, 0, 0, 0};
  const std::vector<double> y{1, 3, 2, 5, 4};
  {
    const std::vector<Predictor> preds{{"a", a}, {"twice_a", b}};
    try {
      multiple_ols(preds, y);
      FAIL("expected rank deficiency");
    } catch (const RankDeficientError& e) {
      CHECK(e.columns() == std::vector<std::string>{"twice_a"});
    }
  }
  {
    const std::vector<Predictor> preds{{"zeros", c}};
    CHECK_THROWS_AS(multiple_ols(preds, y), RankDeficientError);
  }
  {
    const std::vector<double> a4{1, 2, 3, 4};
    const std::vector<double> b4{4, 1, 3, 2};
    const std::vector<double> c4{1, 1, 0, 2};
    const std::vector<double> y4{1, 3, 2, 5};
    const std::vector<Predictor> preds{{"a", a4}, {"b", b4}, {"c", c4}};
    CHECK_THROWS_AS(multiple_ols(preds, y4), InsufficientDataError);
  }
}

TEST_CASE("stepwise elimination") {
  Rng rng(77);
  const std::size_t n = 500;
  auto x1 = noise(rng, n);
  auto x2 = noise(rng, n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = 2.0 + 1.5 * x1[i] + rng.normal();
  const std::vector<Predictor> preds{{"x1", x1}, {"x2", x2}};

  const auto all_kept = backward_stepwise(preds, y, 1.0);
  CHECK(all_kept.trace.empty());
  CHECK(all_kept.fit.predictors.size() == 2);

  int eliminated = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng r(seed);
    auto a = noise(r, n);
    auto b = noise(r, n);
    std::vector<double> yy(n);
    for (std::size_t i = 0; i < n; ++i) yy[i] = 1.0 + 0.8 * a[i] + r.normal();
    const std::vector<Predictor> pp{{"x1", a}, {"x2", b}};
    const auto result = backward_stepwise(pp, yy);
    REQUIRE_FALSE(result.fit.predictors.empty());
    CHECK(result.fit.predictors[0].name == "x1");
    for (const auto& c : result.fit.predictors) CHECK(c.p_value <= 0.05);
    if (result.fit.predictors.size() == 1) ++eliminated;
  }
  CHECK(eliminated >= 34);

  // Strong predictors only: nothing to eliminate, result equals the full fit.
  std::vector<double> y3(n);
  for (std::size_t i = 0; i < n; ++i) y3[i] = 1.0 + x1[i] - x2[i] + 0.1 * rng.normal();
  const auto strong = backward_stepwise(preds, y3);
  const auto full = multiple_ols(preds, y3);
  CHECK(strong.trace.empty());
  CHECK(strong.fit.predictors[1].estimate == full.predictors[1].estimate);
}

TEST_CASE("p-value display") {
  CHECK(format_p_value(1e-20) == "<2.2e-16");
  CHECK(format_p_value(0.0) == "<2.2e-16");
  CHECK(format_p_value(0.012345) == "0.01235");
  CHECK(format_p_value(1.0) == "1");
}

TEST_CASE("regression sweep on a synthetic table") {
  auto g = lifegraph::testing::random_graph(1500, 41);
  clean_inconsistent(g);
  const auto table = feature_matrix(g, FeatureSet::Full, 1);
  const auto entries = simple_regression_sweep();
  CHECK_FALSE(entries.empty());
  const auto results = run_simple_sweep(table, entries, 2);
  REQUIRE(results.size() == entries.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(results[i].feature == entries[i].feature);
    CHECK(results[i].dataset == entries[i].dataset);
    if (results[i].fit) {
      const auto spec = *dataset_by_name(entries[i].dataset);
      const auto rows = filter_dataset(table, spec);
      const auto direct = regress_age_on(rows, entries[i].feature);
      CHECK(direct.beta == results[i].fit->beta);
      CHECK(direct.n == results[i].n);
    } else {
      CHECK_FALSE(results[i].error.empty());
    }
  }
  CHECK(default_stepwise_dataset(FeatureSet::NuclearFamily) == "no-missing-50");
  CHECK(default_stepwise_dataset(FeatureSet::Heritage) == "no-missing-10");
  const auto preds = stepwise_predictors(FeatureSet::NuclearFamily);
  CHECK(std::find(preds.begin(), preds.end(), Feature::AgeOfDeath) == preds.end());
  CHECK(preds.size() == 7);
}

TEST_CASE("stepwise for a set can drop aliased predictors") {
  // One spouse each: spouse_number is constant and the three spouse
  // aggregates coincide.
  FeatureTable t(FeatureSet::Full);
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    FeatureRow r;
    r.id = "r" + std::to_string(1000 + i);
    auto& f = r.features;
    f.birth_year = 1800 + static_cast<int>(rng.below(50));
    f.gender_code = 1 + static_cast<int>(rng.below(2));
    f.children_number = static_cast<int>(rng.below(6));
    f.spouse_number = 1;
    const double spouse = 50 + 20 * rng.uniform();
    f.min_spouse_age_of_death = f.max_spouse_age_of_death = f.avg_spouse_age_of_death = spouse;
    f.age_of_death = 55 + 0.3 * (spouse - 60) + 5 * rng.normal();
    t.rows().push_back(r);
  }
  DatasetSpec spec;
  CHECK_THROWS_AS(stepwise_for_set(t, FeatureSet::NuclearFamily, spec), RankDeficientError);
  const auto result = stepwise_for_set(t, FeatureSet::NuclearFamily, spec, 0.05, true);
  CHECK(result.aliased == std::vector<std::string>{"spouse_number", "max_spouse_age_of_death", "avg_spouse_age_of_death"});
  REQUIRE_FALSE(result.fit.predictors.empty());
  bool spouse_kept = false;
  for (const auto& c : result.fit.predictors) spouse_kept |= c.name == "min_spouse_age_of_death";
  CHECK(spouse_kept);
}
