#include "adhocids/simulator.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace adhocids {

std::string mode_name(Mode m) {
  return m == Mode::Idfadnwca ? "idfadnwca" : "spaid";
}

std::optional<Mode> mode_from_name(const std::string& name) {
  if (name == "idfadnwca") return Mode::Idfadnwca;
  if (name == "spaid") return Mode::Spaid;
  return std::nullopt;
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.node_count < 1) throw std::invalid_argument("scenario: node_count must be >= 1");
  if (cfg.area_side <= 0.0) throw std::invalid_argument("scenario: area_side must be > 0");
  if (cfg.radio_range <= 0.0) throw std::invalid_argument("scenario: radio_range must be > 0");
  if (cfg.energy_init.a < 0.0 || cfg.energy_init.b < cfg.energy_init.a) {
    throw std::invalid_argument("scenario: energy_init bounds must satisfy 0 <= lo <= hi");
  }
  if (cfg.member_drain < 0.0 || cfg.monitor_drain < 0.0) {
    throw std::invalid_argument("scenario: drain rates must be >= 0");
  }
  if (!(cfg.member_drain == 0.0 && cfg.monitor_drain == 0.0) &&
      cfg.monitor_drain <= cfg.member_drain) {
    throw std::invalid_argument("scenario: monitor_drain must exceed member_drain");
  }
  if (cfg.threshold < 0.0) throw std::invalid_argument("scenario: threshold must be >= 0");
  if (cfg.hop_radius < 1) throw std::invalid_argument("scenario: hop_radius must be >= 1");
  if (cfg.ticks < 1) throw std::invalid_argument("scenario: ticks must be >= 1");
  if (cfg.pattern_bits < 2 || cfg.pattern_bits > 64) {
    throw std::invalid_argument("scenario: pattern_bits must be in [2, 64]");
  }
  if (cfg.classes < 1) throw std::invalid_argument("scenario: classes must be >= 1");
  if (cfg.train_count < 0) throw std::invalid_argument("scenario: train_count must be >= 0");
  if (cfg.intrusion_count < 0) throw std::invalid_argument("scenario: intrusion_count must be >= 0");
  validate(cfg.ga);
  validate(cfg.tree);

  for (const auto& p : cfg.train_patterns) {
    if (static_cast<int>(p.bits.size()) != cfg.pattern_bits) {
      throw std::invalid_argument("scenario: train pattern width must equal pattern_bits");
    }
    if (p.label < 0 || p.label >= cfg.classes) {
      throw std::invalid_argument("scenario: train label outside [0, classes)");
    }
  }
  for (const auto& ev : cfg.events) {
    if (ev.tick < 0) throw std::invalid_argument("scenario: event tick must be >= 0");
    if (ev.source < 0 || ev.source >= cfg.node_count) {
      throw std::invalid_argument("scenario: event source must name an initial node");
    }
    if (ev.label < 0 || ev.label >= cfg.classes) {
      throw std::invalid_argument("scenario: event label outside [0, classes)");
    }
    if (static_cast<int>(ev.bits.size()) != cfg.pattern_bits) {
      throw std::invalid_argument("scenario: event pattern width must equal pattern_bits");
    }
  }
  for (const auto& j : cfg.joins) {
    if (j.tick < 0) throw std::invalid_argument("scenario: join tick must be >= 0");
    if (j.energy < 0.0) throw std::invalid_argument("scenario: join energy must be >= 0");
  }

  const bool has_events = !cfg.events.empty() || cfg.intrusion_count > 0;
  if (has_events && cfg.train_patterns.empty() && cfg.train_count == 0) {
    throw std::invalid_argument("scenario: intrusion events require training patterns");
  }
}

std::vector<PatternVector> generate_patterns(int bits, int classes, int count, std::uint64_t seed) {
  if (bits < 1 || bits > 64) throw std::invalid_argument("generate_patterns: bits must be in [1, 64]");
  if (classes < 1) throw std::invalid_argument("generate_patterns: classes must be >= 1");
  if (count < 0) throw std::invalid_argument("generate_patterns: count must be >= 0");
  Rng rng(seed);
  std::vector<PatternVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    PatternVector p;
    p.bits.resize(static_cast<std::size_t>(bits));
    for (auto& b : p.bits) b = uniform_bit(rng);
    const int b0 = p.bits[0];
    const int b1 = bits > 1 ? p.bits[1] : 0;
    p.label = (b0 + b1) % classes;
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<int> detect(const Topology& t, const Cluster& cluster, const CaTree& tree,
                          const IntrusionEvent& ev) {
  if (ev.source < 0 || ev.source >= t.node_count() || !t.is_live(ev.source)) return std::nullopt;
  if (!t.is_live(cluster.root)) return std::nullopt;
  PatternVector p;
  p.bits = ev.bits;
  return tree.classify(p);
}

namespace {

struct ElectionState {
  MonitorAssignment assignment;
  std::map<int, Cluster> by_root;
  std::map<int, int> root_of;  // node -> its cluster root (roots map to themselves)

  void reset(const Topology& t, MonitorAssignment a, std::vector<Cluster> clusters) {
    assignment = std::move(a);
    by_root.clear();
    root_of.clear();
    for (auto& c : clusters) {
      for (int m : c.members) root_of[m] = c.root;
      root_of[c.root] = c.root;
      by_root.emplace(c.root, std::move(c));
    }
    (void)t;
  }
};

void insert_sorted(std::vector<int>& v, int value) {
  v.insert(std::upper_bound(v.begin(), v.end(), value), value);
}

void erase_value(std::vector<int>& v, int value) {
  v.erase(std::remove(v.begin(), v.end(), value), v.end());
}

double total_energy(const Topology& t) {
  double sum = 0.0;
  for (int id = 0; id < t.node_count(); ++id) sum += t.node(id).energy;
  return sum;
}

}  // namespace

RunResult run(const ScenarioConfig& cfg) {
  validate(cfg);

  RunResult result;
  result.config = cfg;

  GeometricSpec gs;
  gs.node_count = cfg.node_count;
  gs.area_side = cfg.area_side;
  gs.radio_range = cfg.radio_range;
  gs.energy = cfg.energy_init;
  gs.member_drain = cfg.member_drain;
  gs.monitor_drain = cfg.monitor_drain;
  Topology t = Topology::build_geometric(gs, sub_seed(cfg.seed, SeedStream::Topology));

  std::vector<PatternVector> train = cfg.train_patterns;
  if (train.empty() && cfg.train_count > 0) {
    train = generate_patterns(cfg.pattern_bits, cfg.classes, cfg.train_count,
                              sub_seed(cfg.seed, SeedStream::Training));
  }
  std::optional<CaTree> tree;
  if (!train.empty()) {
    GaConfig ga = cfg.ga;
    ga.seed = sub_seed(cfg.seed, SeedStream::Ga);
    tree = build_tree(train, cfg.tree, ga);
  }

  std::vector<IntrusionEvent> events = cfg.events;
  if (events.empty() && cfg.intrusion_count > 0) {
    const std::uint64_t sched = sub_seed(cfg.seed, SeedStream::Schedule);
    const auto patterns =
        generate_patterns(cfg.pattern_bits, cfg.classes, cfg.intrusion_count, mix64(sched + 1));
    Rng rng(mix64(sched + 2));
    events.reserve(patterns.size());
    for (const auto& p : patterns) {
      IntrusionEvent ev;
      ev.tick = static_cast<long>(uniform_index(rng, static_cast<std::uint64_t>(cfg.ticks)));
      ev.source = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(cfg.node_count)));
      ev.label = p.label;
      ev.bits = p.bits;
      events.push_back(std::move(ev));
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const IntrusionEvent& a, const IntrusionEvent& b) { return a.tick < b.tick; });

  std::vector<JoinEvent> joins = cfg.joins;
  std::stable_sort(joins.begin(), joins.end(),
                   [](const JoinEvent& a, const JoinEvent& b) { return a.tick < b.tick; });

  ElectionState es;
  std::optional<std::string> terminal;

  auto full_election = [&]() {
    try {
      const Pol pol = build_pol(t, cfg.threshold);
      MonitorAssignment a = select_monitors(t, pol, cfg.hop_radius);
      std::vector<Cluster> clusters = form_clusters(t, a);
      for (int id : t.live_ids()) t.set_role(id, Role::Member);
      for (int m : a.monitors) t.set_role(m, Role::Monitor);
      es.reset(t, std::move(a), std::move(clusters));
      return true;
    } catch (const NoEligibleMonitors&) {
      terminal = "no_eligible_monitors";
      return false;
    } catch (const IsolatedIneligibleNode&) {
      terminal = "isolated_ineligible_node";
      return false;
    }
  };

  full_election();

  const double initial_energy = total_energy(t);
  double joined_energy = 0.0;
  double cum_monitor = 0.0;
  long correct_events = 0;
  long total_events = 0;
  double coverage_sum = 0.0;
  std::size_t event_idx = 0;
  std::size_t join_idx = 0;
  const int total_nodes = cfg.node_count + static_cast<int>(cfg.joins.size());

  for (long tick = 0; tick < cfg.ticks && !terminal; ++tick) {
    TickRecord rec;
    rec.tick = tick;

    // (1) drain by role; exhaustion flips nodes to Dead
    for (int id = 0; id < t.node_count(); ++id) {
      const NodeState& n = t.node(id);
      if (n.role == Role::Dead) continue;
      const bool monitoring = n.role == Role::Monitor;
      const double drained = t.drain(id, monitoring ? n.monitor_drain : n.member_drain);
      if (monitoring) cum_monitor += drained;
    }

    // (2) scheduled intrusions, classified by the source's cluster monitor
    while (event_idx < events.size() && events[event_idx].tick == tick) {
      const IntrusionEvent& ev = events[event_idx++];
      std::optional<int> predicted;
      if (tree && ev.source < t.node_count() && t.is_live(ev.source)) {
        const auto root_it = es.root_of.find(ev.source);
        if (root_it != es.root_of.end()) {
          const auto cl = es.by_root.find(root_it->second);
          if (cl != es.by_root.end()) predicted = detect(t, cl->second, *tree, ev);
        }
      }
      ++total_events;
      const bool intrusion = ev.label != 0;
      if (predicted) {
        ++rec.events_delivered;
        if (*predicted == ev.label) ++correct_events;
        if (intrusion && *predicted != 0) {
          ++rec.detections.tp;
        } else if (intrusion) {
          ++rec.detections.fn;
        } else if (*predicted != 0) {
          ++rec.detections.fp;
        } else {
          ++rec.detections.tn;
        }
      } else {
        ++rec.events_missed;
        if (intrusion) {
          ++rec.detections.fn;
        } else {
          ++correct_events;
          ++rec.detections.tn;
        }
      }
    }

    // (3a) joins
    while (!terminal && join_idx < joins.size() && joins[join_idx].tick == tick) {
      const JoinEvent& je = joins[join_idx++];
      const int id = t.add_node(je.x, je.y, cfg.radio_range, je.energy, cfg.member_drain,
                                cfg.monitor_drain);
      joined_energy += je.energy;
      if (!t.is_live(id)) continue;
      const auto target = handle_join(t, id, es.assignment);
      if (target) {
        es.assignment.vote_map[id] = *target;
        es.root_of[id] = *target;
        insert_sorted(es.by_root.at(*target).members, id);
      } else {
        ++rec.full_reruns;
        full_election();
      }
    }

    // (3b) threshold checks per mode
    if (!terminal) {
      if (cfg.mode == Mode::Spaid) {
        bool failing = false;
        for (const auto& [root, cluster] : es.by_root) {
          if (!t.is_live(root) || ca_parameter(t, root) < cfg.threshold) {
            failing = true;
            break;
          }
        }
        if (failing) {
          ++rec.full_reruns;
          full_election();
        }
      } else {
        std::vector<int> roots;
        roots.reserve(es.by_root.size());
        for (const auto& [root, cluster] : es.by_root) roots.push_back(root);
        for (int root : roots) {
          const auto it = es.by_root.find(root);
          if (it == es.by_root.end()) continue;
          if (t.is_live(root) && ca_parameter(t, root) >= cfg.threshold) continue;

          std::vector<int> others;
          for (const auto& [other, cluster] : es.by_root) {
            if (other != root && t.is_live(other)) others.push_back(other);
          }
          const auto re = intra_cluster_reelect(t, it->second, others, cfg.threshold);
          if (!re) {
            ++rec.full_reruns;
            full_election();
            break;
          }

          ReelectStat stat;
          Cluster cluster = std::move(it->second);
          es.by_root.erase(it);
          erase_value(cluster.members, re->new_root);
          const int old_root = cluster.root;
          cluster.root = re->new_root;
          t.set_role(re->new_root, Role::Monitor);
          ++stat.role_changes;
          es.assignment.vote_map[re->new_root] = re->new_root;
          es.root_of[re->new_root] = re->new_root;
          if (t.is_live(old_root)) {
            t.set_role(old_root, Role::Member);
            ++stat.role_changes;
            insert_sorted(cluster.members, old_root);
            es.assignment.vote_map[old_root] = re->new_root;
            es.root_of[old_root] = re->new_root;
          }
          for (const auto& [member, adopter] : re->reassigned) {
            erase_value(cluster.members, member);
            insert_sorted(es.by_root.at(adopter).members, member);
            es.assignment.vote_map[member] = adopter;
            es.root_of[member] = adopter;
            ++stat.stranded;
          }
          erase_value(es.assignment.monitors, old_root);
          insert_sorted(es.assignment.monitors, re->new_root);
          es.by_root.emplace(re->new_root, std::move(cluster));

          ++rec.intra_reelections;
          rec.reelect_stats.push_back(stat);
        }
      }
    }

    // (4) record
    rec.energy.assign(static_cast<std::size_t>(total_nodes), 0.0);
    rec.role.assign(static_cast<std::size_t>(total_nodes), '-');
    for (int id = 0; id < t.node_count(); ++id) {
      rec.energy[static_cast<std::size_t>(id)] = t.node(id).energy;
      rec.role[static_cast<std::size_t>(id)] = role_code(t.node(id).role);
    }
    rec.cum_monitor_energy = cum_monitor;
    rec.cum_total_drain = initial_energy + joined_energy - total_energy(t);
    rec.live_count = t.live_count();

    long covered = 0;
    long live = 0;
    for (int id : t.live_ids()) {
      ++live;
      const auto it = es.root_of.find(id);
      if (it == es.root_of.end()) continue;
      const int root = it->second;
      if (!t.is_live(root)) continue;
      if (id == root) {
        ++covered;
        continue;
      }
      const auto d = t.hop_distance(id, root);
      if (d && *d <= es.assignment.hop_radius) ++covered;
    }
    rec.coverage = live > 0 ? static_cast<double>(covered) / static_cast<double>(live) : 1.0;
    coverage_sum += rec.coverage;

    result.trace.push_back(std::move(rec));
  }

  RunSummary& s = result.summary;
  s.total_monitor_energy = cum_monitor;
  s.total_drain = initial_energy + joined_energy - total_energy(t);
  for (const auto& r : result.trace) {
    s.full_reruns += r.full_reruns;
    s.intra_reelections += r.intra_reelections;
    s.detections.tp += r.detections.tp;
    s.detections.fp += r.detections.fp;
    s.detections.tn += r.detections.tn;
    s.detections.fn += r.detections.fn;
    s.events_delivered += r.events_delivered;
    s.events_missed += r.events_missed;
  }
  s.mean_coverage = result.trace.empty()
                        ? 1.0
                        : coverage_sum / static_cast<double>(result.trace.size());
  s.detection_accuracy =
      total_events > 0 ? static_cast<double>(correct_events) / static_cast<double>(total_events)
                       : 1.0;
  s.final_live = t.live_count();
  s.ticks_executed = static_cast<long>(result.trace.size());
  s.terminal = terminal.value_or("completed");
  return result;
}

CompareReport compare(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("compare: seed list must be nonempty");
  validate(cfg);

  CompareReport rep;
  rep.seeds_total = static_cast<int>(seeds.size());
  rep.energy_idfadnwca.assign(static_cast<std::size_t>(cfg.ticks), 0.0);
  rep.energy_spaid.assign(static_cast<std::size_t>(cfg.ticks), 0.0);

  auto accumulate_series = [&](std::vector<double>& series, const std::vector<TickRecord>& trace) {
    double last = 0.0;
    for (long tk = 0; tk < cfg.ticks; ++tk) {
      if (tk < static_cast<long>(trace.size())) last = trace[static_cast<std::size_t>(tk)].cum_monitor_energy;
      series[static_cast<std::size_t>(tk)] += last;
    }
  };

  for (std::uint64_t seed : seeds) {
    ScenarioConfig c = cfg;
    c.seed = seed;
    c.mode = Mode::Idfadnwca;
    const RunResult a = run(c);
    c.mode = Mode::Spaid;
    const RunResult b = run(c);

    accumulate_series(rep.energy_idfadnwca, a.trace);
    accumulate_series(rep.energy_spaid, b.trace);
    rep.mean_energy_idfadnwca += a.summary.total_monitor_energy;
    rep.mean_energy_spaid += b.summary.total_monitor_energy;
    rep.mean_reruns_idfadnwca += static_cast<double>(a.summary.full_reruns);
    rep.mean_reruns_spaid += static_cast<double>(b.summary.full_reruns);
    if (a.summary.full_reruns <= b.summary.full_reruns) ++rep.seeds_idfadnwca_not_worse;
    rep.per_seed.push_back({seed, a.summary, b.summary});
  }

  const double n = static_cast<double>(seeds.size());
  for (auto& v : rep.energy_idfadnwca) v /= n;
  for (auto& v : rep.energy_spaid) v /= n;
  rep.mean_energy_idfadnwca /= n;
  rep.mean_energy_spaid /= n;
  rep.mean_reruns_idfadnwca /= n;
  rep.mean_reruns_spaid /= n;
  return rep;
}

}  // namespace adhocids
