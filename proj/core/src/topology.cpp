#include "adhocids/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace adhocids {

char role_code(Role r) {
  switch (r) {
    case Role::Member: return 'm';
    case Role::Monitor: return 'M';
    case Role::Dead: return 'd';
  }
  return '?';
}

double supportable_duration(const NodeState& n) {
  if (n.role == Role::Dead) {
    throw std::domain_error("supportable_duration: node " + std::to_string(n.id) + " is dead");
  }
  return n.energy / n.monitor_drain;
}

static double draw_energy(const EnergyInit& e, Rng& rng) {
  switch (e.kind) {
    case EnergyInit::Kind::Constant:
      return e.a;
    case EnergyInit::Kind::Uniform:
      return e.a + (e.b - e.a) * uniform_double(rng);
  }
  return e.a;
}

Topology Topology::build_geometric(const GeometricSpec& spec, std::uint64_t seed) {
  if (spec.node_count < 1) throw std::invalid_argument("build_geometric: node_count must be >= 1");
  if (spec.area_side <= 0.0) throw std::invalid_argument("build_geometric: area_side must be > 0");
  if (spec.radio_range <= 0.0) throw std::invalid_argument("build_geometric: radio_range must be > 0");
  if (spec.member_drain < 0.0 || spec.monitor_drain < 0.0) {
    throw std::invalid_argument("build_geometric: drain rates must be >= 0");
  }
  // Monitoring must cost strictly more than membership; the one exception is
  // the no-drain control case where both rates are zero.
  if (!(spec.member_drain == 0.0 && spec.monitor_drain == 0.0) &&
      spec.monitor_drain <= spec.member_drain) {
    throw std::invalid_argument("build_geometric: monitor_drain must exceed member_drain");
  }
  if (spec.energy.a < 0.0 || spec.energy.b < spec.energy.a) {
    throw std::invalid_argument("build_geometric: energy bounds must satisfy 0 <= a <= b");
  }

  Rng rng(seed);
  Topology t;
  t.nodes_.reserve(static_cast<std::size_t>(spec.node_count));
  for (int i = 0; i < spec.node_count; ++i) {
    NodeState n;
    n.id = i;
    n.x = uniform_double(rng) * spec.area_side;
    n.y = uniform_double(rng) * spec.area_side;
    n.radio_range = spec.radio_range;
    n.energy = draw_energy(spec.energy, rng);
    n.member_drain = spec.member_drain;
    n.monitor_drain = spec.monitor_drain;
    n.role = n.energy > 0.0 ? Role::Member : Role::Dead;
    t.nodes_.push_back(n);
  }
  return t;
}

void Topology::require_id(int id) const {
  if (id < 0 || id >= node_count()) {
    throw std::invalid_argument("topology: unknown node id " + std::to_string(id));
  }
}

void Topology::require_live(int id) const {
  require_id(id);
  if (nodes_[static_cast<std::size_t>(id)].role == Role::Dead) {
    throw std::invalid_argument("topology: node " + std::to_string(id) + " is dead");
  }
}

const NodeState& Topology::node(int id) const {
  require_id(id);
  return nodes_[static_cast<std::size_t>(id)];
}

bool Topology::is_live(int id) const {
  require_id(id);
  return nodes_[static_cast<std::size_t>(id)].role != Role::Dead;
}

std::vector<int> Topology::live_ids() const {
  std::vector<int> out;
  for (const auto& n : nodes_) {
    if (n.role != Role::Dead) out.push_back(n.id);
  }
  return out;
}

long Topology::live_count() const {
  long c = 0;
  for (const auto& n : nodes_) {
    if (n.role != Role::Dead) ++c;
  }
  return c;
}

void Topology::rebuild_links() const {
  const auto n = nodes_.size();
  adjacency_.assign(n, {});
  for (std::size_t a = 0; a < n; ++a) {
    if (nodes_[a].role == Role::Dead) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (nodes_[b].role == Role::Dead) continue;
      const double dx = nodes_[a].x - nodes_[b].x;
      const double dy = nodes_[a].y - nodes_[b].y;
      const double reach = std::min(nodes_[a].radio_range, nodes_[b].radio_range);
      if (dx * dx + dy * dy <= reach * reach) {
        adjacency_[a].push_back(static_cast<int>(b));
        adjacency_[b].push_back(static_cast<int>(a));
      }
    }
  }
  links_dirty_ = false;
}

const std::vector<int>& Topology::neighbors(int id) const {
  require_live(id);
  if (links_dirty_) rebuild_links();
  return adjacency_[static_cast<std::size_t>(id)];
}

std::optional<int> Topology::hop_distance(int a, int b) const {
  require_live(a);
  require_live(b);
  if (a == b) return 0;
  if (links_dirty_) rebuild_links();

  std::vector<int> dist(nodes_.size(), -1);
  std::deque<int> queue;
  dist[static_cast<std::size_t>(a)] = 0;
  queue.push_back(a);
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int nb : adjacency_[static_cast<std::size_t>(cur)]) {
      if (dist[static_cast<std::size_t>(nb)] != -1) continue;
      dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(cur)] + 1;
      if (nb == b) return dist[static_cast<std::size_t>(nb)];
      queue.push_back(nb);
    }
  }
  return std::nullopt;
}

std::vector<int> Topology::neighbors_within(int a, int hops) const {
  require_live(a);
  if (hops < 1) throw std::invalid_argument("neighbors_within: hops must be >= 1");
  if (links_dirty_) rebuild_links();

  std::vector<int> dist(nodes_.size(), -1);
  std::deque<int> queue;
  dist[static_cast<std::size_t>(a)] = 0;
  queue.push_back(a);
  std::vector<int> out;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    if (dist[static_cast<std::size_t>(cur)] == hops) continue;
    for (int nb : adjacency_[static_cast<std::size_t>(cur)]) {
      if (dist[static_cast<std::size_t>(nb)] != -1) continue;
      dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(cur)] + 1;
      out.push_back(nb);
      queue.push_back(nb);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> Topology::live_components() const {
  if (links_dirty_) rebuild_links();
  std::vector<std::vector<int>> components;
  std::vector<char> seen(nodes_.size(), 0);
  for (const auto& n : nodes_) {
    if (n.role == Role::Dead || seen[static_cast<std::size_t>(n.id)]) continue;
    std::vector<int> comp;
    std::deque<int> queue{n.id};
    seen[static_cast<std::size_t>(n.id)] = 1;
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      comp.push_back(cur);
      for (int nb : adjacency_[static_cast<std::size_t>(cur)]) {
        if (!seen[static_cast<std::size_t>(nb)]) {
          seen[static_cast<std::size_t>(nb)] = 1;
          queue.push_back(nb);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

double Topology::drain(int id, double amount) {
  require_id(id);
  if (amount < 0.0) throw std::invalid_argument("drain: amount must be >= 0");
  auto& n = nodes_[static_cast<std::size_t>(id)];
  if (n.role == Role::Dead) return 0.0;
  const double drained = std::min(n.energy, amount);
  n.energy -= drained;
  if (n.energy <= 0.0) {
    n.energy = 0.0;
    n.role = Role::Dead;
    links_dirty_ = true;
  }
  return drained;
}

void Topology::set_role(int id, Role r) {
  require_id(id);
  auto& n = nodes_[static_cast<std::size_t>(id)];
  if (r == Role::Dead && n.energy > 0.0) {
    throw std::invalid_argument("set_role: a node with energy cannot be marked dead");
  }
  if (r != Role::Dead && n.energy <= 0.0) {
    throw std::invalid_argument("set_role: an exhausted node must stay dead");
  }
  n.role = r;
}

int Topology::add_node(double x, double y, double radio_range, double energy,
                       double member_drain, double monitor_drain) {
  if (radio_range <= 0.0) throw std::invalid_argument("add_node: radio_range must be > 0");
  if (energy < 0.0) throw std::invalid_argument("add_node: energy must be >= 0");
  if (member_drain < 0.0 || monitor_drain < 0.0) {
    throw std::invalid_argument("add_node: drain rates must be >= 0");
  }
  if (!(member_drain == 0.0 && monitor_drain == 0.0) && monitor_drain <= member_drain) {
    throw std::invalid_argument("add_node: monitor_drain must exceed member_drain");
  }
  NodeState n;
  n.id = node_count();
  n.x = x;
  n.y = y;
  n.radio_range = radio_range;
  n.energy = energy;
  n.member_drain = member_drain;
  n.monitor_drain = monitor_drain;
  n.role = energy > 0.0 ? Role::Member : Role::Dead;
  nodes_.push_back(n);
  links_dirty_ = true;
  return n.id;
}

}  // namespace adhocids
