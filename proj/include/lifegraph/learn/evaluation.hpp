#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "lifegraph/learn/classifier.hpp"

namespace lifegraph {

struct ScoredLabel {
  double score;
  bool positive;
};

/// Area under the ROC curve as the Mann-Whitney statistic
/// P(score+ > score-) + P(tie)/2, computed from average ranks. Throws
/// DataError unless both classes are present.
double auc(std::span<const ScoredLabel> scored);

/// Stratified partition of row indices into `folds` folds. Positives are
/// shuffled and dealt round-robin, then negatives continue the rotation, so
/// fold sizes and per-fold positive counts each differ by at most one.
/// Throws InsufficientDataError when there are fewer rows than folds.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const std::uint8_t> labels,
                                                       std::size_t folds, std::uint64_t seed);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  void add(bool predicted, bool actual) noexcept;
  double tp_rate() const noexcept;
  double fp_rate() const noexcept;
  double precision() const noexcept;
  /// Harmonic mean of precision and recall for the positive class; 0 when
  /// both are 0.
  double f_measure() const noexcept;
};

struct FoldMetrics {
  std::size_t fold = 0;
  std::size_t rows = 0;
  std::size_t positives = 0;
  ConfusionCounts counts;
  std::optional<double> auc;  // absent when the fold holds one class only
};

struct EvalMetrics {
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  double f_measure = 0.0;
  double auc = 0.0;
  ConfusionCounts counts;
  std::vector<FoldMetrics> folds;
};

/// Stratified k-fold cross-validation. Folds are drawn from spec.seed; the
/// metrics pool the held-out predictions of every fold at threshold 0.5.
/// Folds are trained concurrently on up to `threads` threads (0 = all
/// cores); results do not depend on the thread count.
EvalMetrics cross_validate(const ClassifierSpec& spec, const LabeledTable& data,
                           std::size_t folds = 10, unsigned threads = 0);

nlohmann::ordered_json to_json(const EvalMetrics& m);

}  // namespace lifegraph
