#include "lifegraph/learn/info_gain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lifegraph/error.hpp"

namespace lifegraph {
namespace {

struct Point {
  double value;
  bool positive;
};

double entropy_of(double pos, double total) {
  if (total <= 0.0 || pos <= 0.0 || pos >= total) return 0.0;
  const double p = pos / total;
  const double q = 1.0 - p;
  return -(p * std::log2(p) + q * std::log2(q));
}

int classes_present(double pos, double total) { return (pos > 0.0) + (pos < total); }

// prefix[i] = positives among points[0, i).
void split_range(const std::vector<Point>& points, const std::vector<double>& prefix,
                 std::size_t begin, std::size_t end, std::vector<double>& cuts) {
  const double n = static_cast<double>(end - begin);
  if (end - begin < 2) return;
  const double pos = prefix[end] - prefix[begin];
  const double whole = entropy_of(pos, n);
  if (whole == 0.0) return;

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_at = 0;
  for (std::size_t i = begin + 1; i < end; ++i) {
    if (points[i - 1].value == points[i].value) continue;
    const double nl = static_cast<double>(i - begin);
    const double pl = prefix[i] - prefix[begin];
    const double e = (nl * entropy_of(pl, nl) + (n - nl) * entropy_of(pos - pl, n - nl)) / n;
    if (e < best) {
      best = e;
      best_at = i;
    }
  }
  if (best_at == 0) return;

  const double nl = static_cast<double>(best_at - begin);
  const double pl = prefix[best_at] - prefix[begin];
  const double el = entropy_of(pl, nl);
  const double er = entropy_of(pos - pl, n - nl);
  const int k = classes_present(pos, n);
  const int k1 = classes_present(pl, nl);
  const int k2 = classes_present(pos - pl, n - nl);
  const double delta = std::log2(std::pow(3.0, k) - 2.0) - (k * whole - k1 * el - k2 * er);
  const double gain = whole - best;
  if (gain <= (std::log2(n - 1.0) + delta) / n) return;

  split_range(points, prefix, begin, best_at, cuts);
  cuts.push_back((points[best_at - 1].value + points[best_at].value) / 2.0);
  split_range(points, prefix, best_at, end, cuts);
}

std::vector<Point> present_points(std::span<const double> values,
                                  std::span<const std::uint8_t> labels) {
  if (values.size() != labels.size()) throw DataError("value and label counts differ");
  std::vector<Point> points;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isnan(values[i])) points.push_back({values[i], labels[i] != 0});
  }
  std::sort(points.begin(), points.end(),
            [](const Point& a, const Point& b) { return a.value < b.value; });
  return points;
}

std::vector<double> cuts_for(const std::vector<Point>& points) {
  std::vector<double> prefix(points.size() + 1, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) prefix[i + 1] = prefix[i] + points[i].positive;
  std::vector<double> cuts;
  split_range(points, prefix, 0, points.size(), cuts);
  return cuts;
}

}  // namespace

double binary_entropy(std::size_t positives, std::size_t total) noexcept {
  return entropy_of(static_cast<double>(positives), static_cast<double>(total));
}

std::vector<double> mdl_cut_points(std::span<const double> values,
                                   std::span<const std::uint8_t> labels) {
  return cuts_for(present_points(values, labels));
}

double information_gain(std::span<const double> values, std::span<const std::uint8_t> labels) {
  const auto points = present_points(values, labels);
  if (points.empty()) return 0.0;
  const auto cuts = cuts_for(points);
  std::vector<double> bin_pos(cuts.size() + 1, 0.0);
  std::vector<double> bin_n(cuts.size() + 1, 0.0);
  double pos = 0.0;
  for (const auto& p : points) {
    const auto bin = static_cast<std::size_t>(
        std::lower_bound(cuts.begin(), cuts.end(), p.value) - cuts.begin());
    bin_n[bin] += 1.0;
    bin_pos[bin] += p.positive;
    pos += p.positive;
  }
  const double n = static_cast<double>(points.size());
  double conditional = 0.0;
  for (std::size_t b = 0; b < bin_n.size(); ++b) {
    conditional += bin_n[b] / n * entropy_of(bin_pos[b], bin_n[b]);
  }
  const double gain = std::max(0.0, entropy_of(pos, n) - conditional);
  return gain * n / static_cast<double>(values.size());
}

std::vector<RankedFeature> information_gain_ranking(const LabeledTable& data) {
  std::vector<RankedFeature> out;
  std::vector<double> column(data.rows());
  for (std::size_t c = 0; c < data.cols(); ++c) {
    for (std::size_t r = 0; r < data.rows(); ++r) column[r] = data.at(r, c);
    out.push_back({data.feature_names[c], c, information_gain(column, data.labels)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedFeature& a, const RankedFeature& b) { return a.gain > b.gain; });
  return out;
}

}  // namespace lifegraph
