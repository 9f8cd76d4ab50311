#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lifegraph/learn/labeled_table.hpp"

namespace lifegraph {

/// Fayyad-Irani MDL discretisation of one numeric feature against a binary
/// target. NaN values are ignored. Returns ascending cut points; a value v
/// falls in bin i when cuts[i-1] < v <= cuts[i].
std::vector<double> mdl_cut_points(std::span<const double> values,
                                   std::span<const std::uint8_t> labels);

/// Entropy of a binary target in bits.
double binary_entropy(std::size_t positives, std::size_t total) noexcept;

/// Information gain in bits of the MDL-discretised feature over the rows
/// where it is present, scaled by the present fraction.
double information_gain(std::span<const double> values, std::span<const std::uint8_t> labels);

struct RankedFeature {
  std::string name;
  std::size_t column = 0;
  double gain = 0.0;
};

/// Every column ranked by information gain, highest first; ties keep column
/// order.
std::vector<RankedFeature> information_gain_ranking(const LabeledTable& data);

}  // namespace lifegraph
