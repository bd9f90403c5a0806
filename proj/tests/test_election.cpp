#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "adhocids/election.hpp"
#include "helpers.hpp"

using namespace adhocids;
using adhocids::testing::make_at;
using adhocids::testing::make_path;

namespace {

// Full partition check: clusters pairwise disjoint, every live node either a
// root or in exactly one member set.
void check_partition(const Topology& t, const std::vector<Cluster>& clusters) {
  std::set<int> seen;
  for (const auto& c : clusters) {
    REQUIRE(seen.insert(c.root).second);
    for (int m : c.members) {
      REQUIRE(m != c.root);
      REQUIRE(seen.insert(m).second);
    }
  }
  const auto live = t.live_ids();
  CHECK(seen == std::set<int>(live.begin(), live.end()));
}

}  // namespace

TEST_CASE("ca_parameter delegates to supportable_duration") {
  Topology t;
  t.add_node(0, 0, 1.0, 100.0, 1.0, 5.0);
  t.add_node(0.5, 0, 1.0, 100.0, 1.0, 5.0);
  CHECK(ca_parameter(t, 0) == doctest::Approx(20.0));
  CHECK(ca_parameter(t, 0) == ca_parameter(t, 1));
}

TEST_CASE("an active monitor's parameter strictly decreases tick over tick") {
  Topology t = make_path({50.0, 50.0}, 0.1, 2.0);
  t.set_role(0, Role::Monitor);
  double prev = ca_parameter(t, 0);
  for (int tick = 0; tick < 3; ++tick) {
    t.drain(0, t.node(0).monitor_drain);
    const double cur = ca_parameter(t, 0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("build_pol filters and orders") {
  // Parameters: node0 -> 5, node1 -> 12, node2 -> 8 (monitor_drain 1).
  const Topology t = make_path({5.0, 12.0, 8.0}, 0.1, 1.0);

  SUBCASE("threshold filters, descending parameter") {
    const Pol pol = build_pol(t, 6.0);
    CHECK(pol.ids == std::vector<int>{1, 2});
  }
  SUBCASE("threshold above everything gives an empty list") {
    CHECK(build_pol(t, 100.0).ids.empty());
  }
  SUBCASE("equal parameters tie-break by ascending id") {
    const Topology eq = make_path({7.0, 7.0, 7.0}, 0.1, 1.0);
    CHECK(build_pol(eq, 0.0).ids == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("vote: single node votes for itself") {
  const Topology t = make_path({10.0});
  const std::vector<int> ws{0};
  const VoteMap votes = vote(t, ws, 1);
  REQUIRE(votes.size() == 1);
  CHECK(votes.at(0) == 0);
}

TEST_CASE("vote: unreachable nodes stay unrepresented") {
  const Topology t = make_path({10.0, 9.0, 8.0});
  const std::vector<int> ws{0};
  const VoteMap votes = vote(t, ws, 1);
  CHECK(votes.size() == 2);
  CHECK(votes.at(0) == 0);
  CHECK(votes.at(1) == 0);
  CHECK(!votes.contains(2));
}

TEST_CASE("vote: midpoint picks the candidate with the higher parameter") {
  const Topology t = make_path({10.0, 5.0, 8.0});
  const std::vector<int> ws{0, 2};
  const VoteMap votes = vote(t, ws, 1);
  CHECK(votes.at(1) == 0);  // param(0)=10 > param(2)=8
  CHECK(votes.at(0) == 0);
  CHECK(votes.at(2) == 2);  // working-set members keep their own vote
}

TEST_CASE("vote: parameter ties break toward the lower id") {
  const Topology t = make_path({9.0, 5.0, 9.0});
  const std::vector<int> ws{0, 2};
  const VoteMap votes = vote(t, ws, 1);
  CHECK(votes.at(1) == 0);
}

TEST_CASE("select_monitors: single eligible node covering at h=1") {
  // Star: centre 0 with three leaves in range.
  const Topology t = make_at({{0, 0}, {1, 0}, {0, 1}, {-1, 0}}, 1.25, 100.0);
  const Pol pol = build_pol(t, 50.0 / 1.0);  // only strong nodes
  REQUIRE(!pol.ids.empty());
  const MonitorAssignment a = select_monitors(t, pol, 1);
  CHECK(a.hop_radius == 1);
  CHECK(!a.monitors.empty());
  for (int id : t.live_ids()) CHECK(a.vote_map.contains(id));
}

TEST_CASE("select_monitors: lone eligible endpoint escalates to h=4") {
  // Path 0-1-2-3-4 with only node 0 eligible.
  const Topology t = make_path({100.0, 5.0, 5.0, 5.0, 5.0}, 0.1, 1.0);
  const Pol pol = build_pol(t, 50.0);
  REQUIRE(pol.ids == std::vector<int>{0});
  const MonitorAssignment a = select_monitors(t, pol, 1);
  CHECK(a.hop_radius == 4);
  CHECK(a.monitors == std::vector<int>{0});
  for (int id = 0; id < 5; ++id) CHECK(a.vote_map.at(id) == 0);
}

TEST_CASE("select_monitors: one monitor per disconnected pair") {
  const Topology t =
      make_at({{0, 0}, {1, 0}, {100, 100}, {101, 100}}, 1.25, 100.0);
  Topology mutable_t = t;
  mutable_t.drain(1, 50.0);  // weaken, stays alive
  mutable_t.drain(3, 50.0);
  const Pol pol = build_pol(mutable_t, 60.0);
  REQUIRE(pol.ids == std::vector<int>{0, 2});
  const MonitorAssignment a = select_monitors(mutable_t, pol, 1);
  CHECK(a.hop_radius == 1);
  CHECK(a.monitors == std::vector<int>{0, 2});
  CHECK(a.vote_map.at(1) == 0);
  CHECK(a.vote_map.at(3) == 2);
}

TEST_CASE("select_monitors error cases") {
  const Topology t = make_path({5.0, 5.0});
  CHECK_THROWS_AS(select_monitors(t, build_pol(t, 100.0), 1), NoEligibleMonitors);

  // Two components, candidates only in one.
  const Topology far = make_at({{0, 0}, {100, 100}}, 1.0, 100.0);
  Topology weak = far;
  weak.drain(1, 95.0);  // node 1 alive but ineligible at threshold 50
  const Pol pol = build_pol(weak, 50.0);
  REQUIRE(pol.ids == std::vector<int>{0});
  CHECK_THROWS_AS(select_monitors(weak, pol, 1), IsolatedIneligibleNode);
}

TEST_CASE("form_clusters: one monitor gathers everyone") {
  const Topology t = make_at({{0, 0}, {1, 0}, {0, 1}}, 2.0, 100.0);
  const MonitorAssignment a = select_monitors(t, build_pol(t, 0.0), 1);
  REQUIRE(a.monitors.size() == 1);
  const auto clusters = form_clusters(t, a);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].root == a.monitors[0]);
  CHECK(clusters[0].members.size() == 2);
  check_partition(t, clusters);
}

TEST_CASE("form_clusters: equidistant tie joins the lower-id monitor") {
  // 1 and 3 have equal parameters; node 2 sits between them.
  const Topology t = make_path({3.0, 50.0, 3.0, 50.0, 3.0}, 0.1, 1.0);
  const Pol pol = build_pol(t, 40.0);
  REQUIRE(pol.ids == std::vector<int>{1, 3});
  const MonitorAssignment a = select_monitors(t, pol, 1);
  REQUIRE(a.monitors == std::vector<int>{1, 3});
  CHECK(a.vote_map.at(2) == 1);
  const auto clusters = form_clusters(t, a);
  check_partition(t, clusters);
  CHECK(std::find(clusters[0].members.begin(), clusters[0].members.end(), 2) !=
        clusters[0].members.end());
}

TEST_CASE("form_clusters rejects incomplete assignments") {
  const Topology t = make_path({10.0, 10.0});
  MonitorAssignment a;
  a.hop_radius = 1;
  a.monitors = {0};
  a.vote_map = {{0, 0}};  // node 1 missing
  CHECK_THROWS_AS(form_clusters(t, a), std::invalid_argument);
}

TEST_CASE("form_clusters partitions a random topology") {
  GeometricSpec spec;
  spec.node_count = 30;
  spec.area_side = 100.0;
  spec.radio_range = 45.0;
  spec.energy = {EnergyInit::Kind::Uniform, 50.0, 150.0};
  const Topology t = Topology::build_geometric(spec, 91);
  const Pol pol = build_pol(t, 60.0);
  if (pol.ids.empty()) return;  // seed-dependent guard; still deterministic
  const MonitorAssignment a = select_monitors(t, pol, 1);
  check_partition(t, form_clusters(t, a));
}

TEST_CASE("intra_cluster_reelect basics") {
  // Root 0 with members 1..3 in range; threshold 5.
  const Topology base = make_at({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 2.0, 100.0);

  SUBCASE("single qualified member takes over") {
    Topology t = base;
    t.drain(1, 97.0);  // param 3 < 5
    t.drain(2, 97.0);
    // member 3 keeps param 100
    Cluster c{0, {1, 2, 3}, 1};
    const auto r = intra_cluster_reelect(t, c, {}, 5.0);
    REQUIRE(r.has_value());
    CHECK(r->new_root == 3);
    CHECK(r->reassigned.empty());
  }
  SUBCASE("no qualified member forces a full rerun") {
    Topology t = base;
    t.drain(1, 97.0);
    t.drain(2, 97.0);
    t.drain(3, 97.0);
    Cluster c{0, {1, 2, 3}, 1};
    CHECK(!intra_cluster_reelect(t, c, {}, 5.0).has_value());
  }
  SUBCASE("parameter tie picks the lower id") {
    Topology t = base;
    t.drain(1, 91.0);  // param 9
    t.drain(2, 91.0);  // param 9
    t.drain(3, 96.0);  // param 4
    Cluster c{0, {1, 2, 3}, 1};
    const auto r = intra_cluster_reelect(t, c, {}, 5.0);
    REQUIRE(r.has_value());
    CHECK(r->new_root == 1);
  }
}

TEST_CASE("intra_cluster_reelect re-homes stranded members") {
  // Path 0-1-2-3: cluster rooted at 1 with members {0, 2} at radius 1.
  // Node 3 is a separate monitor. Re-rooting to 2 strands node 0, which is
  // adjacent to nothing but 1; with 1 demoted only monitor 3 remains, too far,
  // so the result is a full-rerun signal.
  Topology t = make_path({10.0, 4.0, 50.0, 60.0}, 0.1, 1.0);
  Cluster c{1, {0, 2}, 1};
  const auto r = intra_cluster_reelect(t, c, std::vector<int>{3}, 5.0);
  CHECK(!r.has_value());

  // With a radius of 2 nothing is stranded.
  Cluster wide{1, {0, 2}, 2};
  const auto r2 = intra_cluster_reelect(t, wide, std::vector<int>{3}, 5.0);
  REQUIRE(r2.has_value());
  CHECK(r2->new_root == 2);
  CHECK(r2->reassigned.empty());
}

TEST_CASE("intra_cluster_reelect adopts stranded members into a reachable cluster") {
  // Path 0-1-2-3-4. Cluster rooted at 1, members {0, 2}; monitor 3 nearby.
  // New root must be 0 or 2; force 0 to be best so 2 stays in radius of 0?
  // Arrange instead: root 1 fails, member 0 is weak, member 2 strong: new
  // root 2; node 0 is 2 hops from 2, stranded; monitor at 3 cannot reach 0,
  // but a monitor at -1 (node 4 placed left) can.
  Topology t;
  t.add_node(-1, 0, 1.25, 70.0, 0.1, 1.0);  // id 0: left monitor
  t.add_node(0, 0, 1.25, 8.0, 0.1, 1.0);    // id 1: stranded-to-be member
  t.add_node(1, 0, 1.25, 4.0, 0.1, 1.0);    // id 2: failing root
  t.add_node(2, 0, 1.25, 60.0, 0.1, 1.0);   // id 3: takes over
  Cluster c{2, {1, 3}, 1};
  const auto r = intra_cluster_reelect(t, c, std::vector<int>{0}, 5.0);
  REQUIRE(r.has_value());
  CHECK(r->new_root == 3);
  REQUIRE(r->reassigned.size() == 1);
  CHECK(r->reassigned[0] == std::pair<int, int>{1, 0});
}

TEST_CASE("handle_join") {
  // Monitor 0 with member 1; hop radius 1.
  Topology t = make_path({100.0, 20.0}, 0.1, 1.0);
  const MonitorAssignment a = select_monitors(t, build_pol(t, 50.0), 1);
  REQUIRE(a.monitors == std::vector<int>{0});

  SUBCASE("weak newcomer near the monitor joins locally") {
    const int id = t.add_node(0.5, 0.5, 1.25, 30.0, 0.1, 1.0);
    const auto target = handle_join(t, id, a);
    REQUIRE(target.has_value());
    CHECK(*target == 0);
  }
  SUBCASE("newcomer with the global best parameter forces a rerun") {
    const int id = t.add_node(0.5, 0.5, 1.25, 500.0, 0.1, 1.0);
    CHECK(!handle_join(t, id, a).has_value());
  }
  SUBCASE("unreachable newcomer forces a rerun") {
    const int id = t.add_node(50.0, 50.0, 1.25, 30.0, 0.1, 1.0);
    CHECK(!handle_join(t, id, a).has_value());
  }
}

TEST_CASE("coverage postcondition holds on random connected topologies") {
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 30 && seed < 500; ++seed) {
    GeometricSpec spec;
    spec.node_count = 20 + static_cast<int>(seed % 30);
    spec.area_side = 120.0;
    spec.radio_range = 60.0;
    spec.energy = {EnergyInit::Kind::Uniform, 40.0, 160.0};
    const Topology t = Topology::build_geometric(spec, seed);
    if (t.live_components().size() != 1) continue;
    ++tested;
    const Pol pol = build_pol(t, 50.0);
    if (pol.ids.empty()) continue;
    const MonitorAssignment a = select_monitors(t, pol, 1);
    for (int id : t.live_ids()) {
      const int target = a.vote_map.at(id);
      const auto d = t.hop_distance(id, target);
      REQUIRE(d.has_value());
      CHECK(*d <= a.hop_radius);
      CHECK(ca_parameter(t, target) >= 50.0);  // threshold soundness
    }
  }
  CHECK(tested == 30);
}

TEST_CASE("scaling all energies and the threshold preserves the election") {
  GeometricSpec spec;
  spec.node_count = 25;
  spec.area_side = 100.0;
  spec.radio_range = 50.0;
  spec.energy = {EnergyInit::Kind::Uniform, 40.0, 160.0};
  const Topology t = Topology::build_geometric(spec, 3);

  Topology scaled;
  const double k = 3.5;
  for (int id = 0; id < t.node_count(); ++id) {
    const auto& n = t.node(id);
    scaled.add_node(n.x, n.y, n.radio_range, n.energy * k, n.member_drain, n.monitor_drain);
  }

  const Pol pol = build_pol(t, 60.0);
  const Pol pol_scaled = build_pol(scaled, 60.0 * k);
  CHECK(pol.ids == pol_scaled.ids);
  if (pol.ids.empty()) return;

  const MonitorAssignment a = select_monitors(t, pol, 1);
  const MonitorAssignment b = select_monitors(scaled, pol_scaled, 1);
  CHECK(a.monitors == b.monitors);
  CHECK(a.vote_map == b.vote_map);
  CHECK(a.hop_radius == b.hop_radius);
}
