#include <algorithm>
#include <cmath>
#include <numeric>

#include "lifegraph/error.hpp"
#include "models.hpp"

namespace lifegraph::detail {
namespace {

struct Counts {
  double neg = 0.0;
  double pos = 0.0;

  void add(bool positive) { (positive ? pos : neg) += 1.0; }
  void add(const Counts& o) {
    neg += o.neg;
    pos += o.pos;
  }
  double total() const { return neg + pos; }
  // Ties count as positive, matching the score >= 0.5 decision rule.
  bool majority_positive() const { return pos >= neg; }
  double majority_count() const { return std::max(neg, pos); }
};

struct Group {
  double value;
  Counts counts;
};

struct Rule {
  std::vector<double> thresholds;
  std::vector<Counts> buckets;
  Counts missing;
  double correct = 0.0;
};

Rule build_rule(const LabeledTable& data, std::span<const std::size_t> rows, std::size_t attribute,
                int min_bucket) {
  Rule rule;
  std::vector<std::pair<double, bool>> known;
  known.reserve(rows.size());
  for (std::size_t r : rows) {
    const double v = data.at(r, attribute);
    if (std::isnan(v)) {
      rule.missing.add(data.labels[r] != 0);
    } else {
      known.emplace_back(v, data.labels[r] != 0);
    }
  }
  std::stable_sort(known.begin(), known.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Group> groups;
  for (const auto& [v, positive] : known) {
    if (groups.empty() || groups.back().value != v) groups.push_back({v, {}});
    groups.back().counts.add(positive);
  }

  // Buckets of consecutive value groups; a bucket closes once its majority
  // class has min_bucket members and the next group favours the other class.
  struct Bucket {
    Counts counts;
    double first;
    double last;
  };
  std::vector<Bucket> buckets;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (buckets.empty() || g == 0) buckets.push_back({{}, groups[g].value, groups[g].value});
    auto& b = buckets.back();
    b.counts.add(groups[g].counts);
    b.last = groups[g].value;
    const bool more = g + 1 < groups.size();
    if (more && b.counts.majority_count() >= min_bucket &&
        groups[g + 1].counts.majority_positive() != b.counts.majority_positive()) {
      buckets.push_back({{}, groups[g + 1].value, groups[g + 1].value});
    }
  }
  if (!buckets.empty() && buckets.back().counts.total() == 0.0) buckets.pop_back();

  // Merge neighbours predicting the same class.
  std::vector<Bucket> merged;
  for (const auto& b : buckets) {
    if (!merged.empty() &&
        merged.back().counts.majority_positive() == b.counts.majority_positive()) {
      merged.back().counts.add(b.counts);
      merged.back().last = b.last;
    } else {
      merged.push_back(b);
    }
  }
  if (merged.empty()) merged.push_back({{}, 0.0, 0.0});
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (i > 0) rule.thresholds.push_back((merged[i - 1].last + merged[i].first) / 2.0);
    rule.buckets.push_back(merged[i].counts);
    rule.correct += merged[i].counts.majority_count();
  }
  rule.correct += rule.missing.majority_count();
  return rule;
}

double fraction_or(const Counts& c, double fallback) {
  return c.total() > 0.0 ? c.pos / c.total() : fallback;
}

}  // namespace

double OneRModel::score(std::span<const double> row) const {
  const double v = row[attribute];
  if (std::isnan(v)) return missing_score;
  const auto bucket = static_cast<std::size_t>(
      std::upper_bound(thresholds.begin(), thresholds.end(), v) - thresholds.begin());
  return scores[bucket];
}

nlohmann::ordered_json OneRModel::to_json() const {
  return {{"attribute", attribute},
          {"thresholds", thresholds},
          {"scores", scores},
          {"missing_score", missing_score},
          {"training_accuracy", training_accuracy}};
}

std::unique_ptr<OneRModel> OneRModel::from_json(const nlohmann::json& j) {
  auto m = std::make_unique<OneRModel>();
  m->attribute = j.at("attribute").get<std::size_t>();
  m->thresholds = j.at("thresholds").get<std::vector<double>>();
  m->scores = j.at("scores").get<std::vector<double>>();
  m->missing_score = j.at("missing_score").get<double>();
  m->training_accuracy = j.at("training_accuracy").get<double>();
  if (m->scores.size() != m->thresholds.size() + 1) throw DataError("OneR model: bucket count mismatch");
  return m;
}

std::unique_ptr<OneRModel> train_one_r(const LabeledTable& data, std::span<const std::size_t> rows,
                                       int min_bucket) {
  if (rows.empty()) throw InsufficientDataError("OneR needs at least one training row");
  if (data.cols() == 0) throw DataError("OneR needs at least one attribute");
  double positives = 0.0;
  for (std::size_t r : rows) positives += data.labels[r];
  const double prior = positives / static_cast<double>(rows.size());

  std::optional<Rule> best;
  std::size_t best_attribute = 0;
  for (std::size_t a = 0; a < data.cols(); ++a) {
    Rule rule = build_rule(data, rows, a, min_bucket);
    if (!best || rule.correct > best->correct) {
      best = std::move(rule);
      best_attribute = a;
    }
  }
  auto model = std::make_unique<OneRModel>();
  model->attribute = best_attribute;
  model->thresholds = best->thresholds;
  for (const auto& c : best->buckets) model->scores.push_back(fraction_or(c, prior));
  model->missing_score = fraction_or(best->missing, prior);

  std::size_t correct = 0;
  for (std::size_t r : rows) {
    const bool predicted = model->score(data.row(r)) >= kDecisionThreshold;
    if (predicted == (data.labels[r] != 0)) ++correct;
  }
  model->training_accuracy = static_cast<double>(correct) / static_cast<double>(rows.size());
  return model;
}

}  // namespace lifegraph::detail
