#include <algorithm>
#include <cmath>
#include <limits>

#include "lifegraph/error.hpp"
#include "models.hpp"

namespace lifegraph::detail {

double KnnModel::normalize(std::size_t feature, double value) const {
  if (std::isnan(value)) return value;
  const double lo = minimum[feature];
  const double hi = maximum[feature];
  if (std::isnan(lo) || !(hi > lo)) return 0.0;
  return (value - lo) / (hi - lo);
}

double KnnModel::score(std::span<const double> row) const {
  if (row.size() != width) throw DataError("KNN query has the wrong number of features");
  std::vector<double> query(width);
  for (std::size_t f = 0; f < width; ++f) query[f] = normalize(f, row[f]);

  const std::size_t n = labels.size();
  std::vector<std::pair<double, std::size_t>> distances(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* train = normalized.data() + i * width;
    double sum = 0.0;
    for (std::size_t f = 0; f < width; ++f) {
      const double a = query[f];
      const double b = train[f];
      double d;
      if (std::isnan(a) && std::isnan(b)) {
        d = 1.0;
      } else if (std::isnan(a)) {
        d = std::max(b, 1.0 - b);
      } else if (std::isnan(b)) {
        d = std::max(a, 1.0 - a);
      } else {
        d = a - b;
      }
      sum += d * d;
    }
    distances[i] = {sum, i};
  }
  const std::size_t used = std::min<std::size_t>(static_cast<std::size_t>(k), n);
  std::partial_sort(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(used),
                    distances.end());
  std::size_t positive = 0;
  for (std::size_t i = 0; i < used; ++i) positive += labels[distances[i].second];
  return static_cast<double>(positive) / static_cast<double>(used);
}

nlohmann::ordered_json KnnModel::to_json() const {
  auto mins = nlohmann::ordered_json::array();
  auto maxs = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < width; ++f) {
    mins.push_back(number_or_null(minimum[f]));
    maxs.push_back(number_or_null(maximum[f]));
  }
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto r = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < width; ++f) r.push_back(number_or_null(normalized[i * width + f]));
    rows.push_back(std::move(r));
  }
  return {{"k", k}, {"minimum", mins}, {"maximum", maxs}, {"rows", rows}, {"labels", labels}};
}

std::unique_ptr<KnnModel> KnnModel::from_json(const nlohmann::json& j) {
  auto m = std::make_unique<KnnModel>();
  m->k = j.at("k").get<int>();
  for (const auto& v : j.at("minimum")) m->minimum.push_back(number_from(v));
  for (const auto& v : j.at("maximum")) m->maximum.push_back(number_from(v));
  m->width = m->minimum.size();
  if (m->maximum.size() != m->width) throw DataError("KNN model: range size mismatch");
  for (const auto& r : j.at("rows")) {
    if (r.size() != m->width) throw DataError("KNN model: row width mismatch");
    for (const auto& v : r) m->normalized.push_back(number_from(v));
  }
  m->labels = j.at("labels").get<std::vector<std::uint8_t>>();
  if (m->labels.size() * m->width != m->normalized.size()) throw DataError("KNN model: label count mismatch");
  if (m->k < 1 || m->labels.empty()) throw DataError("KNN model: invalid parameters");
  return m;
}

std::unique_ptr<KnnModel> train_knn(const LabeledTable& data, std::span<const std::size_t> rows,
                                    int k) {
  if (rows.empty()) throw InsufficientDataError("KNN needs at least one training row");
  auto m = std::make_unique<KnnModel>();
  m->k = k;
  m->width = data.cols();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  m->minimum.assign(m->width, nan);
  m->maximum.assign(m->width, nan);
  for (std::size_t r : rows) {
    for (std::size_t f = 0; f < m->width; ++f) {
      const double v = data.at(r, f);
      if (std::isnan(v)) continue;
      if (std::isnan(m->minimum[f]) || v < m->minimum[f]) m->minimum[f] = v;
      if (std::isnan(m->maximum[f]) || v > m->maximum[f]) m->maximum[f] = v;
    }
  }
  m->normalized.reserve(rows.size() * m->width);
  for (std::size_t r : rows) {
    for (std::size_t f = 0; f < m->width; ++f) m->normalized.push_back(m->normalize(f, data.at(r, f)));
    m->labels.push_back(data.labels[r]);
  }
  return m;
}

}  // namespace lifegraph::detail
