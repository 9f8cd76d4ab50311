#include "lifegraph/learn/evaluation.hpp"

#include <algorithm>
#include <numeric>

#include "lifegraph/error.hpp"
#include "lifegraph/parallel.hpp"
#include "lifegraph/random.hpp"

namespace lifegraph {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Stream index reserved for fold assignment, apart from model seeds.
constexpr std::uint64_t kFoldStream = 0xF01D;

}  // namespace

double auc(std::span<const ScoredLabel> scored) {
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scored[a].score < scored[b].score; });
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scored[order[j]].score == scored[order[i]].score) ++j;
    // Ranks i+1 .. j share their average.
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (scored[order[t]].positive) {
        positive_rank_sum += rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = scored.size() - positives;
  if (positives == 0 || negatives == 0) throw DataError("AUC needs both classes");
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const std::uint8_t> labels,
                                                       std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw DataError("cross-validation needs at least 2 folds");
  if (labels.size() < folds) {
    throw InsufficientDataError("cannot split " + std::to_string(labels.size()) + " rows into " +
                                std::to_string(folds) + " folds");
  }
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] ? pos : neg).push_back(i);
  Rng rng(seed);
  rng.shuffle(pos.begin(), pos.end());
  rng.shuffle(neg.begin(), neg.end());
  std::vector<std::vector<std::size_t>> out(folds);
  std::size_t next = 0;
  for (const auto* group : {&pos, &neg}) {
    for (std::size_t i : *group) {
      out[next].push_back(i);
      next = (next + 1) % folds;
    }
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

void ConfusionCounts::add(bool predicted, bool actual) noexcept {
  if (predicted) {
    ++(actual ? tp : fp);
  } else {
    ++(actual ? fn : tn);
  }
}

double ConfusionCounts::tp_rate() const noexcept { return ratio(tp, tp + fn); }
double ConfusionCounts::fp_rate() const noexcept { return ratio(fp, fp + tn); }
double ConfusionCounts::precision() const noexcept { return ratio(tp, tp + fp); }

double ConfusionCounts::f_measure() const noexcept {
  const double p = precision();
  const double r = tp_rate();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

EvalMetrics cross_validate(const ClassifierSpec& spec, const LabeledTable& data, std::size_t folds,
                           unsigned threads) {
  spec.validate();
  const std::size_t positives = data.positives();
  if (positives == 0 || positives == data.rows()) {
    throw DataError("cross-validation needs both classes");
  }
  const auto partition = stratified_folds(data.labels, folds, derive_seed(spec.seed, kFoldStream));

  std::vector<double> scores(data.rows());
  parallel_for(folds, threads, [&](std::size_t f) {
    std::vector<std::size_t> training;
    training.reserve(data.rows() - partition[f].size());
    for (std::size_t g = 0; g < folds; ++g) {
      if (g != f) training.insert(training.end(), partition[g].begin(), partition[g].end());
    }
    std::sort(training.begin(), training.end());
    const auto model = train(spec, data, training);
    for (std::size_t r : partition[f]) scores[r] = model->score(data.row(r));
  });

  EvalMetrics m;
  std::vector<ScoredLabel> pooled;
  pooled.reserve(data.rows());
  for (std::size_t f = 0; f < folds; ++f) {
    FoldMetrics fm;
    fm.fold = f;
    std::vector<ScoredLabel> held_out;
    for (std::size_t r : partition[f]) {
      const bool actual = data.labels[r] != 0;
      const bool predicted = scores[r] >= kDecisionThreshold;
      fm.counts.add(predicted, actual);
      m.counts.add(predicted, actual);
      held_out.push_back({scores[r], actual});
      ++fm.rows;
      fm.positives += actual ? 1 : 0;
    }
    if (fm.positives > 0 && fm.positives < fm.rows) fm.auc = auc(held_out);
    pooled.insert(pooled.end(), held_out.begin(), held_out.end());
    m.folds.push_back(fm);
  }
  m.tp_rate = m.counts.tp_rate();
  m.fp_rate = m.counts.fp_rate();
  m.f_measure = m.counts.f_measure();
  m.auc = auc(pooled);
  return m;
}

nlohmann::ordered_json to_json(const EvalMetrics& m) {
  auto counts = [](const ConfusionCounts& c) {
    return nlohmann::ordered_json{{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
  };
  nlohmann::ordered_json j;
  j["tp_rate"] = m.tp_rate;
  j["fp_rate"] = m.fp_rate;
  j["f_measure"] = m.f_measure;
  j["auc"] = m.auc;
  j["counts"] = counts(m.counts);
  auto folds = nlohmann::ordered_json::array();
  for (const auto& f : m.folds) {
    folds.push_back({{"fold", f.fold},
                     {"rows", f.rows},
                     {"positives", f.positives},
                     {"tp_rate", f.counts.tp_rate()},
                     {"fp_rate", f.counts.fp_rate()},
                     {"f_measure", f.counts.f_measure()},
                     {"auc", f.auc ? nlohmann::ordered_json(*f.auc) : nullptr},
                     {"counts", counts(f.counts)}});
  }
  j["folds"] = folds;
  return j;
}

}  // namespace lifegraph
