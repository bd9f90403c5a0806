#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adhocids/topology.hpp"

namespace adhocids {

struct NoEligibleMonitors : std::runtime_error {
  NoEligibleMonitors() : std::runtime_error("no node meets the monitor eligibility threshold") {}
};

struct IsolatedIneligibleNode : std::runtime_error {
  explicit IsolatedIneligibleNode(int node)
      : std::runtime_error("node " + std::to_string(node) +
                           " lives in a component with no eligible monitor"),
        node(node) {}
  int node;
};

// A node's standing as a monitor candidate: the supportable duration.
double ca_parameter(const Topology& t, int id);

// Threshold-filtered candidate list, best candidate first (descending
// parameter, ties broken by ascending id).
struct Pol {
  std::vector<int> ids;
  double threshold = 0.0;
};

Pol build_pol(const Topology& t, double threshold);

// voter id -> chosen candidate id
using VoteMap = std::map<int, int>;

// Every live node with a working-set candidate within hop_radius hops votes
// for the reachable candidate of highest parameter (tie: lowest id); a
// working-set member votes for itself. Nodes with no reachable candidate are
// absent from the map.
VoteMap vote(const Topology& t, std::span<const int> working_set, int hop_radius);

struct MonitorAssignment {
  int hop_radius = 1;
  std::vector<int> monitors;  // ascending
  VoteMap vote_map;
};

// Grows a working set over the candidate list until every live node is
// represented, keeping an extension only when it strictly raises the
// represented count; exhausting the list escalates the hop radius and
// restarts. Throws NoEligibleMonitors on an empty list and
// IsolatedIneligibleNode when some component has no candidate at all.
MonitorAssignment select_monitors(const Topology& t, const Pol& pol, int initial_hop_radius);

struct Cluster {
  int root = 0;
  std::vector<int> members;  // ascending, never contains root
  int hop_radius = 1;
};

// One cluster per monitor: the monitor as root, its voters as members.
// Requires a complete assignment (every live node represented).
std::vector<Cluster> form_clusters(const Topology& t, const MonitorAssignment& a);

struct Reelection {
  int new_root = 0;
  // Members left outside the new root's hop radius, with the other monitor
  // adopting each (nearest by hops, tie: lowest id).
  std::vector<std::pair<int, int>> reassigned;
};

// Replaces a failing cluster root with its best qualified member, touching
// only this cluster. nullopt means no member qualifies, or a stranded member
// has no other monitor in reach — either way the caller must rerun the full
// election. other_monitors are the remaining cluster roots (ids only), used
// solely to place stranded members.
std::optional<Reelection> intra_cluster_reelect(const Topology& t, const Cluster& c,
                                                std::span<const int> other_monitors,
                                                double threshold);

// Folds a freshly joined node into the existing assignment: returns the
// monitor whose cluster it joins, or nullopt when a full re-election is
// needed (the newcomer outranks every monitor, or no monitor is in reach).
std::optional<int> handle_join(const Topology& t, int new_id, const MonitorAssignment& a);

}  // namespace adhocids
