#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "adhocids/ca.hpp"

namespace adhocids {

// Quantized attribute vector. label is -1 for unlabeled patterns.
struct PatternVector {
  std::vector<std::uint8_t> bits;
  int label = -1;

  bool operator==(const PatternVector&) const = default;
};

// Thermometer encoding: attribute i with ordered cut points c_1 < ... < c_k
// contributes the bits (raw_i >= c_1), ..., (raw_i >= c_k), concatenated in
// attribute order. Throws on arity mismatch or unordered cut points.
PatternVector encode_pattern(const std::vector<double>& raw,
                             const std::vector<std::vector<double>>& thresholds);

// Per-basin class histograms: attractor id -> count per class.
struct BasinDistribution {
  int class_count = 0;
  long total = 0;
  std::map<std::uint64_t, std::vector<long>> histograms;
};

// Weighted mean over basins of the majority-class fraction; 1.0 iff every
// nonempty basin is single-class. Throws on an empty distribution.
double relevance_index(const BasinDistribution& d);

// Routes every labeled pattern to its attractor and tallies the class
// histogram per basin.
BasinDistribution induce_distribution(const AttractorIndex& index,
                                      const std::vector<PatternVector>& patterns,
                                      int class_count);

int max_label(const std::vector<PatternVector>& patterns);

}  // namespace adhocids
