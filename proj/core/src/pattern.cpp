#include "adhocids/pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace adhocids {

PatternVector encode_pattern(const std::vector<double>& raw,
                             const std::vector<std::vector<double>>& thresholds) {
  if (raw.size() != thresholds.size()) {
    throw std::invalid_argument("encode_pattern: one cut-point list per attribute required");
  }
  PatternVector p;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& cuts = thresholds[i];
    if (cuts.empty()) throw std::invalid_argument("encode_pattern: empty cut-point list");
    if (!std::is_sorted(cuts.begin(), cuts.end())) {
      throw std::invalid_argument("encode_pattern: cut points must be ordered");
    }
    for (double c : cuts) {
      p.bits.push_back(raw[i] >= c ? 1 : 0);
    }
  }
  return p;
}

double relevance_index(const BasinDistribution& d) {
  if (d.total <= 0 || d.histograms.empty()) {
    throw std::invalid_argument("relevance_index: empty distribution");
  }
  long majority_sum = 0;
  for (const auto& [basin, counts] : d.histograms) {
    majority_sum += *std::max_element(counts.begin(), counts.end());
  }
  return static_cast<double>(majority_sum) / static_cast<double>(d.total);
}

BasinDistribution induce_distribution(const AttractorIndex& index,
                                      const std::vector<PatternVector>& patterns,
                                      int class_count) {
  if (patterns.empty()) throw std::invalid_argument("induce_distribution: empty pattern set");
  if (class_count < 1) throw std::invalid_argument("induce_distribution: class_count must be >= 1");
  BasinDistribution d;
  d.class_count = class_count;
  std::map<std::uint64_t, std::uint64_t> basin_of;  // repeated patterns resolve once
  for (const auto& p : patterns) {
    if (static_cast<int>(p.bits.size()) != index.lattice_bits()) {
      throw std::invalid_argument("induce_distribution: pattern length mismatch");
    }
    if (p.label < 0 || p.label >= class_count) {
      throw std::invalid_argument("induce_distribution: label outside [0, class_count)");
    }
    const std::uint64_t state = pack_cells(p.bits);
    auto mem = basin_of.find(state);
    if (mem == basin_of.end()) {
      mem = basin_of.emplace(state, index.attractor_of(state)).first;
    }
    auto [it, fresh] = d.histograms.try_emplace(mem->second, std::vector<long>(static_cast<std::size_t>(class_count), 0));
    ++it->second[static_cast<std::size_t>(p.label)];
    ++d.total;
  }
  return d;
}

int max_label(const std::vector<PatternVector>& patterns) {
  int m = -1;
  for (const auto& p : patterns) m = std::max(m, p.label);
  return m;
}

}  // namespace adhocids
