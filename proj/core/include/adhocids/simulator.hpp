#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adhocids/classifier.hpp"
#include "adhocids/election.hpp"
#include "adhocids/ga.hpp"
#include "adhocids/topology.hpp"

namespace adhocids {

// Idfadnwca re-elects inside the failing cluster and falls back to a full
// election only when the cluster has no qualified member; Spaid reruns the
// full election whenever any monitor drops below the threshold.
enum class Mode { Idfadnwca, Spaid };

std::string mode_name(Mode m);
std::optional<Mode> mode_from_name(const std::string& name);

struct IntrusionEvent {
  long tick = 0;
  int source = 0;
  int label = 0;
  std::vector<std::uint8_t> bits;

  bool operator==(const IntrusionEvent&) const = default;
};

struct JoinEvent {
  long tick = 0;
  double x = 0.0;
  double y = 0.0;
  double energy = 0.0;

  bool operator==(const JoinEvent&) const = default;
};

struct ScenarioConfig {
  int node_count = 0;  // required, >= 1
  double area_side = 300.0;
  double radio_range = 100.0;
  EnergyInit energy_init{};
  double member_drain = 0.05;
  double monitor_drain = 1.0;
  double threshold = 10.0;
  int hop_radius = 1;
  Mode mode = Mode::Idfadnwca;
  long ticks = 100;
  std::uint64_t seed = 1;

  int pattern_bits = 8;
  int classes = 2;
  // Synthetic training set and intrusion schedule sizes, used only when no
  // explicit train / event lines are given. The generator draws uniform
  // bits and labels each pattern (bit0 + bit1) mod classes.
  int train_count = 200;
  int intrusion_count = 0;

  GaConfig ga{};     // ga.seed is ignored; the run derives it from `seed`
  TreeConfig tree{};

  std::vector<PatternVector> train_patterns;
  std::vector<IntrusionEvent> events;
  std::vector<JoinEvent> joins;

  bool operator==(const ScenarioConfig&) const = default;
};

// Throws std::invalid_argument naming the violated invariant.
void validate(const ScenarioConfig& cfg);

// Deterministic synthetic pattern source shared by training and schedule
// generation.
std::vector<PatternVector> generate_patterns(int bits, int classes, int count, std::uint64_t seed);

struct DetectionCounts {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
};

struct ReelectStat {
  int role_changes = 0;  // demoted old root (if alive) + promoted new root
  int stranded = 0;      // members re-assigned to another cluster
};

struct TickRecord {
  long tick = 0;
  std::vector<double> energy;  // by node id; 0 for nodes that have not joined
  std::vector<char> role;      // role codes; '-' for nodes that have not joined
  double cum_monitor_energy = 0.0;
  double cum_total_drain = 0.0;
  int intra_reelections = 0;  // this tick
  int full_reruns = 0;        // this tick
  std::vector<ReelectStat> reelect_stats;
  long events_delivered = 0;  // this tick
  long events_missed = 0;
  DetectionCounts detections;  // this tick
  double coverage = 1.0;
  long live_count = 0;
};

struct RunSummary {
  double total_monitor_energy = 0.0;
  double total_drain = 0.0;
  long full_reruns = 0;
  long intra_reelections = 0;
  double mean_coverage = 1.0;
  double detection_accuracy = 1.0;  // exact-class agreement; 1.0 with no events
  DetectionCounts detections;
  long events_delivered = 0;
  long events_missed = 0;
  long final_live = 0;
  long ticks_executed = 0;
  // completed | no_eligible_monitors | isolated_ineligible_node
  std::string terminal = "completed";
};

struct RunResult {
  ScenarioConfig config;
  RunSummary summary;
  std::vector<TickRecord> trace;
};

// Deterministic tick loop. Per tick: (1) drain energy by role and mark
// deaths, (2) deliver scheduled intrusions to cluster monitors, (3) apply
// scheduled joins, then re-elect monitors that fell below the threshold
// according to the mode, (4) append the tick record. Election dead ends
// (no eligible monitor, isolated ineligible component) end the run early and
// are recorded in the summary.
RunResult run(const ScenarioConfig& cfg);

// Classifies an event inside its source's cluster; nullopt (a miss) when the
// source or the cluster's monitor is dead.
std::optional<int> detect(const Topology& t, const Cluster& cluster, const CaTree& tree,
                          const IntrusionEvent& ev);

struct SeedComparison {
  std::uint64_t seed = 0;
  RunSummary idfadnwca;
  RunSummary spaid;
};

struct CompareReport {
  std::vector<SeedComparison> per_seed;
  // Mean cumulative monitoring energy per tick across seeds, one series per
  // mode; runs that ended early continue at their final value.
  std::vector<double> energy_idfadnwca;
  std::vector<double> energy_spaid;
  double mean_energy_idfadnwca = 0.0;
  double mean_energy_spaid = 0.0;
  double mean_reruns_idfadnwca = 0.0;
  double mean_reruns_spaid = 0.0;
  int seeds_total = 0;
  int seeds_idfadnwca_not_worse = 0;  // reruns(idfadnwca) <= reruns(spaid)
};

// Paired runs per seed: both modes see the identical topology, training set
// and schedule because those streams derive from the seed alone.
CompareReport compare(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& seeds);

}  // namespace adhocids
