#include <algorithm>
#include <cmath>
#include <numbers>

#include "lifegraph/error.hpp"
#include "models.hpp"

namespace lifegraph::detail {
namespace {

constexpr double kDefaultPrecision = 0.01;

double log_density(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

}  // namespace

double NaiveBayesModel::score(std::span<const double> row) const {
  if (row.size() != terms.size()) throw DataError("Naive Bayes query has the wrong number of features");
  double log_odds = log_prior[1] - log_prior[0];
  for (std::size_t f = 0; f < terms.size(); ++f) {
    const auto& t = terms[f];
    if (!t.used || std::isnan(row[f])) continue;
    log_odds += log_density(row[f], t.mean[1], t.sd[1]) - log_density(row[f], t.mean[0], t.sd[0]);
  }
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

nlohmann::ordered_json NaiveBayesModel::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& t : terms) {
    if (!t.used) {
      arr.push_back(nullptr);
    } else {
      arr.push_back({{"mean", {t.mean[0], t.mean[1]}}, {"sd", {t.sd[0], t.sd[1]}}});
    }
  }
  return {{"log_prior", {log_prior[0], log_prior[1]}}, {"terms", arr}};
}

std::unique_ptr<NaiveBayesModel> NaiveBayesModel::from_json(const nlohmann::json& j) {
  auto m = std::make_unique<NaiveBayesModel>();
  const auto& prior = j.at("log_prior");
  m->log_prior[0] = prior.at(0).get<double>();
  m->log_prior[1] = prior.at(1).get<double>();
  for (const auto& t : j.at("terms")) {
    GaussianTerm term;
    if (!t.is_null()) {
      term.used = true;
      for (int c = 0; c < 2; ++c) {
        term.mean[c] = t.at("mean").at(c).get<double>();
        term.sd[c] = t.at("sd").at(c).get<double>();
        if (!(term.sd[c] > 0.0)) throw DataError("Naive Bayes model: non-positive sd");
      }
    }
    m->terms.push_back(term);
  }
  return m;
}

std::unique_ptr<NaiveBayesModel> train_naive_bayes(const LabeledTable& data,
                                                   std::span<const std::size_t> rows) {
  double class_count[2] = {0.0, 0.0};
  for (std::size_t r : rows) class_count[data.labels[r] ? 1 : 0] += 1.0;
  if (class_count[0] == 0.0 || class_count[1] == 0.0) {
    throw InsufficientDataError("Naive Bayes needs both classes in the training data");
  }
  auto m = std::make_unique<NaiveBayesModel>();
  const double n = class_count[0] + class_count[1];
  for (int c = 0; c < 2; ++c) m->log_prior[c] = std::log((class_count[c] + 1.0) / (n + 2.0));

  std::vector<double> values;
  for (std::size_t f = 0; f < data.cols(); ++f) {
    values.clear();
    double count[2] = {0.0, 0.0};
    double sum[2] = {0.0, 0.0};
    for (std::size_t r : rows) {
      const double v = data.at(r, f);
      if (std::isnan(v)) continue;
      const int c = data.labels[r] ? 1 : 0;
      count[c] += 1.0;
      sum[c] += v;
      values.push_back(v);
    }
    GaussianTerm term;
    if (count[0] == 0.0 || count[1] == 0.0) {
      m->terms.push_back(term);
      continue;
    }
    std::sort(values.begin(), values.end());
    const auto distinct = static_cast<std::size_t>(
        std::unique(values.begin(), values.end()) - values.begin());
    const double precision =
        distinct > 1 ? (values[distinct - 1] - values[0]) / static_cast<double>(distinct - 1)
                     : kDefaultPrecision;
    double squares[2] = {0.0, 0.0};
    for (int c = 0; c < 2; ++c) term.mean[c] = sum[c] / count[c];
    for (std::size_t r : rows) {
      const double v = data.at(r, f);
      if (std::isnan(v)) continue;
      const int c = data.labels[r] ? 1 : 0;
      const double d = v - term.mean[c];
      squares[c] += d * d;
    }
    for (int c = 0; c < 2; ++c) {
      term.sd[c] = std::max(std::sqrt(squares[c] / count[c]), precision / 6.0);
    }
    term.used = true;
    m->terms.push_back(term);
  }
  return m;
}

}  // namespace lifegraph::detail
