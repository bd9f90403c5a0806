#pragma once

#include <vector>

#include "adhocids/topology.hpp"

namespace adhocids::testing {

// Path graph 0 - 1 - ... - (n-1): unit spacing, range 1.25, so only adjacent
// nodes link. Energies give one value per node.
inline Topology make_path(const std::vector<double>& energies, double member_drain = 0.1,
                          double monitor_drain = 1.0) {
  Topology t;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    t.add_node(static_cast<double>(i), 0.0, 1.25, energies[i], member_drain, monitor_drain);
  }
  return t;
}

// Nodes at explicit positions with a shared range.
inline Topology make_at(const std::vector<std::pair<double, double>>& positions, double range,
                        double energy = 100.0, double member_drain = 0.1,
                        double monitor_drain = 1.0) {
  Topology t;
  for (const auto& [x, y] : positions) {
    t.add_node(x, y, range, energy, member_drain, monitor_drain);
  }
  return t;
}

}  // namespace adhocids::testing
