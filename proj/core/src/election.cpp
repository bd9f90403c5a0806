#include "adhocids/election.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace adhocids {

double ca_parameter(const Topology& t, int id) {
  return supportable_duration(t.node(id));
}

Pol build_pol(const Topology& t, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("build_pol: threshold must be >= 0");
  Pol pol;
  pol.threshold = threshold;
  for (int id : t.live_ids()) {
    if (ca_parameter(t, id) >= threshold) pol.ids.push_back(id);
  }
  std::sort(pol.ids.begin(), pol.ids.end(), [&](int a, int b) {
    const double pa = ca_parameter(t, a);
    const double pb = ca_parameter(t, b);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  return pol;
}

namespace {

// Hop distances from `source` to every node, -1 where unreachable.
std::vector<int> hops_from(const Topology& t, int source) {
  std::vector<int> dist(static_cast<std::size_t>(t.node_count()), -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int nb : t.neighbors(cur)) {
      if (dist[static_cast<std::size_t>(nb)] != -1) continue;
      dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(cur)] + 1;
      queue.push_back(nb);
    }
  }
  return dist;
}

}  // namespace

VoteMap vote(const Topology& t, std::span<const int> working_set, int hop_radius) {
  if (working_set.empty()) throw std::invalid_argument("vote: working set must be nonempty");
  if (hop_radius < 1) throw std::invalid_argument("vote: hop_radius must be >= 1");

  VoteMap votes;
  for (int candidate : working_set) {
    const double param = ca_parameter(t, candidate);
    const std::vector<int> dist = hops_from(t, candidate);
    for (int voter : t.live_ids()) {
      const int d = dist[static_cast<std::size_t>(voter)];
      if (d < 0 || d > hop_radius) continue;
      const auto it = votes.find(voter);
      if (it == votes.end()) {
        votes.emplace(voter, candidate);
        continue;
      }
      const double cur = ca_parameter(t, it->second);
      if (param > cur || (param == cur && candidate < it->second)) it->second = candidate;
    }
  }
  // A candidate keeps its own vote regardless of stronger peers in range.
  for (int candidate : working_set) votes[candidate] = candidate;
  return votes;
}

MonitorAssignment select_monitors(const Topology& t, const Pol& pol, int initial_hop_radius) {
  if (initial_hop_radius < 1) {
    throw std::invalid_argument("select_monitors: initial hop radius must be >= 1");
  }
  if (pol.ids.empty()) throw NoEligibleMonitors();

  // A component without any candidate can never be covered, at any radius.
  for (const auto& component : t.live_components()) {
    const bool has_candidate = std::any_of(component.begin(), component.end(), [&](int id) {
      return std::find(pol.ids.begin(), pol.ids.end(), id) != pol.ids.end();
    });
    if (!has_candidate) throw IsolatedIneligibleNode(component.front());
  }

  const long live = t.live_count();
  const int radius_limit = t.node_count() + 1;

  for (int h = initial_hop_radius; h <= radius_limit; ++h) {
    std::vector<int> ws{pol.ids.front()};
    std::size_t cursor = 1;
    VoteMap votes = vote(t, ws, h);
    long represented = static_cast<long>(votes.size());

    while (true) {
      if (represented == live) {
        MonitorAssignment a;
        a.hop_radius = h;
        a.vote_map = votes;
        for (const auto& [voter, candidate] : votes) a.monitors.push_back(candidate);
        std::sort(a.monitors.begin(), a.monitors.end());
        a.monitors.erase(std::unique(a.monitors.begin(), a.monitors.end()), a.monitors.end());
        return a;
      }
      if (cursor == pol.ids.size()) break;  // list exhausted, escalate radius

      ws.push_back(pol.ids[cursor++]);
      VoteMap extended = vote(t, ws, h);
      const long extended_represented = static_cast<long>(extended.size());
      if (extended_represented < represented) {
        // Adding a candidate can only add represented nodes.
        throw std::logic_error("select_monitors: working-set extension reduced coverage");
      }
      if (extended_represented > represented) {
        votes = std::move(extended);
        represented = extended_represented;
      } else {
        ws.pop_back();
      }
    }
  }
  // Unreachable: at radius node_count every candidate spans its component.
  throw std::logic_error("select_monitors: radius escalation failed to cover the network");
}

std::vector<Cluster> form_clusters(const Topology& t, const MonitorAssignment& a) {
  for (int id : t.live_ids()) {
    if (!a.vote_map.contains(id)) {
      throw std::invalid_argument("form_clusters: node " + std::to_string(id) +
                                  " is unrepresented");
    }
  }
  std::map<int, Cluster> by_root;
  for (int m : a.monitors) {
    by_root.emplace(m, Cluster{m, {}, a.hop_radius});
  }
  for (const auto& [voter, candidate] : a.vote_map) {
    if (voter == candidate) continue;
    const auto it = by_root.find(candidate);
    if (it == by_root.end()) {
      throw std::invalid_argument("form_clusters: vote target " + std::to_string(candidate) +
                                  " is not a monitor");
    }
    it->second.members.push_back(voter);
  }
  std::vector<Cluster> clusters;
  clusters.reserve(by_root.size());
  for (auto& [root, cluster] : by_root) {
    std::sort(cluster.members.begin(), cluster.members.end());
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

std::optional<Reelection> intra_cluster_reelect(const Topology& t, const Cluster& c,
                                                std::span<const int> other_monitors,
                                                double threshold) {
  int best = -1;
  double best_param = -std::numeric_limits<double>::infinity();
  for (int member : c.members) {
    if (!t.is_live(member)) continue;
    const double p = ca_parameter(t, member);
    if (p < threshold) continue;
    if (p > best_param || (p == best_param && member < best)) {
      best = member;
      best_param = p;
    }
  }
  if (best < 0) return std::nullopt;

  Reelection r;
  r.new_root = best;
  const std::vector<int> dist = hops_from(t, best);
  std::vector<int> remaining = c.members;
  if (t.is_live(c.root)) remaining.push_back(c.root);  // demoted root stays as a member
  for (int member : remaining) {
    if (member == best || !t.is_live(member)) continue;
    const int d = dist[static_cast<std::size_t>(member)];
    if (d >= 0 && d <= c.hop_radius) continue;

    // Stranded: adopt into the nearest other monitor's cluster.
    int adopter = -1;
    int adopter_hops = 0;
    for (int m : other_monitors) {
      if (!t.is_live(m)) continue;
      const auto hops = t.hop_distance(member, m);
      if (!hops || *hops > c.hop_radius) continue;
      if (adopter < 0 || *hops < adopter_hops || (*hops == adopter_hops && m < adopter)) {
        adopter = m;
        adopter_hops = *hops;
      }
    }
    if (adopter < 0) return std::nullopt;
    r.reassigned.emplace_back(member, adopter);
  }
  return r;
}

std::optional<int> handle_join(const Topology& t, int new_id, const MonitorAssignment& a) {
  const double param = ca_parameter(t, new_id);
  double best_monitor_param = -std::numeric_limits<double>::infinity();
  for (int m : a.monitors) {
    if (!t.is_live(m)) continue;
    best_monitor_param = std::max(best_monitor_param, ca_parameter(t, m));
  }
  if (param > best_monitor_param) return std::nullopt;

  int target = -1;
  int target_hops = 0;
  for (int m : a.monitors) {
    if (!t.is_live(m)) continue;
    const auto hops = t.hop_distance(new_id, m);
    if (!hops || *hops > a.hop_radius) continue;
    if (target < 0 || *hops < target_hops || (*hops == target_hops && m < target)) {
      target = m;
      target_hops = *hops;
    }
  }
  if (target < 0) return std::nullopt;
  return target;
}

}  // namespace adhocids
