#include <algorithm>
#include <cmath>
#include <numeric>

#include "lifegraph/error.hpp"
#include "lifegraph/random.hpp"
#include "models.hpp"

namespace lifegraph::detail {
namespace {

// Gains within this distance of the average still qualify for selection.
constexpr double kAverageGainSlack = 1e-3;

double entropy(double neg, double pos) {
  const double total = neg + pos;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double c : {neg, pos}) {
    if (c > 0.0) {
      const double p = c / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

struct Instance {
  std::size_t row;
  double weight;
};

struct Candidate {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
  double gain_ratio = 0.0;
  double left_weight = 0.0;
  double right_weight = 0.0;
};

class Grower {
 public:
  Grower(const LabeledTable& data, const TreeOptions& options, TreeModel& tree)
      : data_(data), options_(options), tree_(tree) {}

  int grow(std::vector<Instance> instances, std::uint64_t node_id) {
    double neg = 0.0;
    double pos = 0.0;
    for (const auto& inst : instances) (data_.labels[inst.row] ? pos : neg) += inst.weight;
    const double total = neg + pos;

    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    tree_.nodes[static_cast<std::size_t>(index)].score = total > 0.0 ? pos / total : 0.5;
    if (neg == 0.0 || pos == 0.0 || total < 2.0) return index;

    const auto best = choose_split(instances, total, entropy(neg, pos), node_id);
    if (!best) return index;

    std::vector<Instance> left;
    std::vector<Instance> right;
    const double known = best->left_weight + best->right_weight;
    const double left_share = best->left_weight / known;
    for (const auto& inst : instances) {
      const double v = data_.at(inst.row, best->feature);
      if (std::isnan(v)) {
        left.push_back({inst.row, inst.weight * left_share});
        right.push_back({inst.row, inst.weight * (1.0 - left_share)});
      } else if (v <= best->threshold) {
        left.push_back(inst);
      } else {
        right.push_back(inst);
      }
    }
    instances.clear();
    instances.shrink_to_fit();

    {
      auto& node = tree_.nodes[static_cast<std::size_t>(index)];
      node.feature = static_cast<int>(best->feature);
      node.threshold = best->threshold;
      node.left_fraction = left_share;
    }
    const int l = grow(std::move(left), 2 * node_id + 1);
    const int r = grow(std::move(right), 2 * node_id + 2);
    tree_.nodes[static_cast<std::size_t>(index)].left = l;
    tree_.nodes[static_cast<std::size_t>(index)].right = r;
    return index;
  }

 private:
  // Best binary split of one numeric feature, or nullopt when no threshold
  // leaves min_leaf_weight of known weight on both sides with positive
  // corrected gain.
  std::optional<Candidate> evaluate(const std::vector<Instance>& instances, std::size_t feature,
                                    double total) {
    auto& known = scratch_;
    known.clear();
    for (const auto& inst : instances) {
      const double v = data_.at(inst.row, feature);
      if (!std::isnan(v)) known.push_back({v, inst.weight, data_.labels[inst.row] != 0});
    }
    if (known.size() < 2) return std::nullopt;
    std::sort(known.begin(), known.end(), [](const Point& a, const Point& b) {
      return a.value < b.value;
    });
    double known_neg = 0.0;
    double known_pos = 0.0;
    for (const auto& p : known) (p.positive ? known_pos : known_neg) += p.weight;
    const double known_weight = known_neg + known_pos;
    const double known_entropy = entropy(known_neg, known_pos);
    const double min_leaf = options_.min_leaf_weight;

    double left_neg = 0.0;
    double left_pos = 0.0;
    std::size_t positions = 0;
    double best_gain = -1.0;
    std::size_t best_at = 0;
    double best_left = 0.0;
    for (std::size_t i = 0; i + 1 < known.size(); ++i) {
      (known[i].positive ? left_pos : left_neg) += known[i].weight;
      if (known[i].value == known[i + 1].value) continue;
      const double lw = left_neg + left_pos;
      const double rw = known_weight - lw;
      if (lw < min_leaf || rw < min_leaf) continue;
      ++positions;
      const double after = (lw * entropy(left_neg, left_pos) +
                            rw * entropy(known_neg - left_neg, known_pos - left_pos)) /
                           known_weight;
      const double gain = known_entropy - after;
      if (gain > best_gain) {
        best_gain = gain;
        best_at = i;
        best_left = lw;
      }
    }
    if (positions == 0) return std::nullopt;

    Candidate c;
    c.feature = feature;
    c.threshold = (known[best_at].value + known[best_at + 1].value) / 2.0;
    c.left_weight = best_left;
    c.right_weight = known_weight - best_left;
    c.gain = known_weight / total * best_gain - std::log2(static_cast<double>(positions)) / total;
    if (c.gain <= 0.0) return std::nullopt;
    double split_info = 0.0;
    for (double w : {c.left_weight, c.right_weight, total - known_weight}) {
      if (w > 0.0) split_info -= w / total * std::log2(w / total);
    }
    c.gain_ratio = split_info > 0.0 ? c.gain / split_info : 0.0;
    return c;
  }

  std::optional<Candidate> choose_split(const std::vector<Instance>& instances, double total,
                                        double /*node_entropy*/, std::uint64_t node_id) {
    const std::size_t p = data_.cols();
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::size_t wanted = p;
    if (options_.features_per_split && *options_.features_per_split < p) {
      wanted = *options_.features_per_split;
      Rng rng(derive_seed(options_.seed, node_id));
      rng.shuffle(order.begin(), order.end());
    }

    // Evaluate `wanted` features; with a random subset keep drawing further
    // features until at least one usable split turns up.
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < p; ++i) {
      if (i >= wanted && !candidates.empty()) break;
      if (auto c = evaluate(instances, order[i], total)) candidates.push_back(*c);
    }
    if (candidates.empty()) return std::nullopt;

    double average = 0.0;
    for (const auto& c : candidates) average += c.gain;
    average /= static_cast<double>(candidates.size());

    const Candidate* best = nullptr;
    for (const auto& c : candidates) {
      if (c.gain < average - kAverageGainSlack) continue;
      if (!best || c.gain_ratio > best->gain_ratio ||
          (c.gain_ratio == best->gain_ratio && c.feature < best->feature)) {
        best = &c;
      }
    }
    if (!best) return std::nullopt;
    return *best;
  }

  struct Point {
    double value;
    double weight;
    bool positive;
  };

  const LabeledTable& data_;
  const TreeOptions& options_;
  TreeModel& tree_;
  std::vector<Point> scratch_;
};

}  // namespace

double TreeModel::score_from(int node, std::span<const double> row) const {
  const auto& n = nodes[static_cast<std::size_t>(node)];
  if (n.feature < 0) return n.score;
  const double v = row[static_cast<std::size_t>(n.feature)];
  if (std::isnan(v)) {
    return n.left_fraction * score_from(n.left, row) +
           (1.0 - n.left_fraction) * score_from(n.right, row);
  }
  return score_from(v <= n.threshold ? n.left : n.right, row);
}

double TreeModel::score(std::span<const double> row) const {
  if (nodes.empty()) throw Error("empty tree");
  return score_from(0, row);
}

nlohmann::ordered_json TreeModel::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& n : nodes) {
    if (n.feature < 0) {
      arr.push_back({{"score", n.score}});
    } else {
      arr.push_back({{"feature", n.feature},
                     {"threshold", n.threshold},
                     {"left_fraction", n.left_fraction},
                     {"left", n.left},
                     {"right", n.right},
                     {"score", n.score}});
    }
  }
  return {{"nodes", arr}};
}

std::unique_ptr<TreeModel> TreeModel::from_json(const nlohmann::json& j) {
  auto tree = std::make_unique<TreeModel>();
  for (const auto& n : j.at("nodes")) {
    TreeNode node;
    node.score = n.at("score").get<double>();
    if (n.contains("feature")) {
      node.feature = n.at("feature").get<int>();
      node.threshold = n.at("threshold").get<double>();
      node.left_fraction = n.at("left_fraction").get<double>();
      node.left = n.at("left").get<int>();
      node.right = n.at("right").get<int>();
    }
    tree->nodes.push_back(node);
  }
  const int count = static_cast<int>(tree->nodes.size());
  if (count == 0) throw DataError("tree model has no nodes");
  for (const auto& n : tree->nodes) {
    if (n.feature >= 0 && (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count)) {
      throw DataError("tree model has a dangling child index");
    }
  }
  return tree;
}

std::unique_ptr<TreeModel> grow_tree(const LabeledTable& data, std::span<const std::size_t> rows,
                                     std::span<const double> weights, const TreeOptions& options) {
  if (rows.size() != weights.size()) throw DataError("row and weight counts differ");
  if (rows.empty()) throw InsufficientDataError("a tree needs at least one training row");
  std::vector<Instance> instances;
  instances.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (weights[i] > 0.0) instances.push_back({rows[i], weights[i]});
  }
  auto tree = std::make_unique<TreeModel>();
  Grower grower(data, options, *tree);
  grower.grow(std::move(instances), 0);
  return tree;
}

}  // namespace lifegraph::detail
