#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adhocids/rng.hpp"

namespace adhocids {

enum class Role { Member, Monitor, Dead };

// Single-character role codes used in trace files: m / M / d.
char role_code(Role r);

struct NodeState {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double radio_range = 0.0;
  double energy = 0.0;
  Role role = Role::Member;
  double member_drain = 0.0;
  double monitor_drain = 0.0;
};

// Ticks the node could serve as a monitor before exhaustion:
// energy / monitor_drain. Throws std::domain_error for a dead node.
double supportable_duration(const NodeState& n);

struct EnergyInit {
  enum class Kind { Constant, Uniform };
  Kind kind = Kind::Constant;
  double a = 100.0;  // value for Constant, lower bound for Uniform
  double b = 100.0;  // upper bound for Uniform

  bool operator==(const EnergyInit&) const = default;
};

struct GeometricSpec {
  int node_count = 1;
  double area_side = 100.0;
  double radio_range = 30.0;
  EnergyInit energy{};
  double member_drain = 0.05;
  double monitor_drain = 1.0;
};

// Static-position node graph. A link (a, b) exists iff both nodes are alive
// and their Euclidean distance is at most min(range_a, range_b), which keeps
// the relation symmetric. Positions never move once placed; the link set
// changes only when a node dies or joins.
class Topology {
 public:
  Topology() = default;

  // Node positions i.i.d. uniform over the area square. Identical
  // (spec, seed) gives a bit-identical topology.
  static Topology build_geometric(const GeometricSpec& spec, std::uint64_t seed);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const NodeState& node(int id) const;
  bool is_live(int id) const;
  std::vector<int> live_ids() const;
  long live_count() const;

  // Live 1-hop neighbours of a live node, ascending id.
  const std::vector<int>& neighbors(int id) const;

  // Shortest path length in link hops; nullopt when unreachable.
  // Both endpoints must be live.
  std::optional<int> hop_distance(int a, int b) const;

  // All live nodes b != a with hop_distance(a, b) <= hops, ascending id.
  std::vector<int> neighbors_within(int a, int hops) const;

  // Connected components over live nodes; components and their members are
  // sorted ascending.
  std::vector<std::vector<int>> live_components() const;

  // Subtracts up to `amount` energy; a node reaching zero flips to Dead and
  // drops out of the link set. Returns the amount actually drained.
  double drain(int id, double amount);

  void set_role(int id, Role r);

  // Appends a node (id = node_count()). Used for join events.
  int add_node(double x, double y, double radio_range, double energy,
               double member_drain, double monitor_drain);

 private:
  void require_id(int id) const;
  void require_live(int id) const;
  void rebuild_links() const;

  std::vector<NodeState> nodes_;
  mutable std::vector<std::vector<int>> adjacency_;
  mutable bool links_dirty_ = true;
};

}  // namespace adhocids
