// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets are enforced with wall-clock checks where a criterion
// carries one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adhocids/ca.hpp"
#include "adhocids/classifier.hpp"
#include "adhocids/election.hpp"
#include "adhocids/ga.hpp"
#include "adhocids/report.hpp"
#include "adhocids/simulator.hpp"

using namespace adhocids;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    ok = false;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0.0 && elapsed >= budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over budget of ") +
              fmt_double(budget_seconds) + "s";
  }
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
              elapsed, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

// ---- independent functional-graph oracle ----------------------------------

std::vector<std::uint8_t> oracle_step(int rule_number, const std::vector<std::uint8_t>& cells) {
  std::vector<std::uint8_t> out(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const int l = i == 0 ? 0 : cells[i - 1];
    const int c = cells[i];
    const int r = i + 1 == cells.size() ? 0 : cells[i + 1];
    out[i] = (rule_number >> (l * 4 + c * 2 + r)) & 1 ? 1 : 0;
  }
  return out;
}

std::vector<std::uint32_t> oracle_successors(int rule_number, int n) {
  std::vector<std::uint32_t> succ(std::size_t{1} << n);
  for (std::uint32_t s = 0; s < succ.size(); ++s) {
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cells[static_cast<std::size_t>(i)] = (s >> (n - 1 - i)) & 1;
    const auto next = oracle_step(rule_number, cells);
    std::uint32_t packed = 0;
    for (std::uint8_t bit : next) packed = (packed << 1) | bit;
    succ[s] = packed;
  }
  return succ;
}

std::vector<std::uint32_t> oracle_basin_map(const std::vector<std::uint32_t>& succ) {
  std::vector<std::uint32_t> attractor(succ.size());
  for (std::uint32_t s = 0; s < succ.size(); ++s) {
    // Walk |states| steps to guarantee landing inside the terminal cycle,
    // then take the cycle's smallest member.
    std::uint32_t probe = s;
    for (std::size_t i = 0; i < succ.size(); ++i) probe = succ[probe];
    std::uint32_t smallest = probe;
    for (std::uint32_t cur = succ[probe]; cur != probe; cur = succ[cur]) {
      smallest = std::min(smallest, cur);
    }
    attractor[s] = smallest;
  }
  return attractor;
}

// ---- shared fixtures -------------------------------------------------------

std::vector<PatternVector> two_bit_separable_dataset(int count, int bits, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PatternVector> out;
  for (int i = 0; i < count; ++i) {
    PatternVector p;
    p.bits.resize(static_cast<std::size_t>(bits));
    for (auto& b : p.bits) b = uniform_bit(rng);
    p.label = p.bits[0] ^ p.bits[1];
    out.push_back(std::move(p));
  }
  return out;
}

ScenarioConfig trend_config() {
  ScenarioConfig cfg;
  cfg.node_count = 50;
  cfg.area_side = 300.0;
  cfg.radio_range = 100.0;
  cfg.energy_init = {EnergyInit::Kind::Uniform, 80.0, 120.0};
  cfg.member_drain = 0.02;
  cfg.monitor_drain = 1.0;
  cfg.threshold = 20.0;
  cfg.hop_radius = 1;
  cfg.ticks = 1000;
  cfg.train_count = 200;
  cfg.intrusion_count = 50;
  return cfg;
}

struct TrendData {
  std::vector<SeedComparison> per_seed;
  std::vector<RunResult> idf_runs;  // kept for the locality criterion
  std::vector<double> mean_energy_idf;
  std::vector<double> mean_energy_spaid;
};

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  criterion(1, "CA engine exactness", 30.0, [](std::string& detail) {
    const CaRule identity = CaRule::from_number(204);
    const CaRule zero = CaRule::from_number(0);
    for (int n = 1; n <= 10; ++n) {
      const std::uint64_t total = std::uint64_t{1} << n;
      for (std::uint64_t s = 0; s < total; ++s) {
        if (step_packed(identity, s, n) != s) {
          detail = "rule 204 moved a state at n=" + std::to_string(n);
          return false;
        }
        if (step_packed(zero, s, n) != 0) {
          detail = "rule 0 missed zero at n=" + std::to_string(n);
          return false;
        }
      }
    }
    for (int rule = 0; rule < 256; ++rule) {
      const auto want = oracle_basin_map(oracle_successors(rule, 6));
      const auto got = enumerate_basins(CaRule::from_number(rule), 6);
      if (got.attractor_of != want) {
        detail = "basin mismatch for rule " + std::to_string(rule);
        return false;
      }
    }
    detail = "256 rules at n=6 against the functional-graph oracle";
    return true;
  });

  criterion(2, "fuzzy range safety", 0.0, [](std::string& detail) {
    Rng rng(2024);
    for (int i = 0; i < 100000; ++i) {
      const int n = 1 + static_cast<int>(uniform_index(rng, 16));
      std::vector<std::uint8_t> bits(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
      for (auto& b : bits) b = uniform_bit(rng);
      const DependencyMatrix T = DependencyMatrix::from_bits(bits, n);
      FcaState s;
      s.cells.resize(static_cast<std::size_t>(n));
      for (auto& c : s.cells) c = uniform_double(rng);
      const FcaState next = step_fuzzy(T, s);
      for (double c : next.cells) {
        if (c < 0.0 || c > 1.0) {
          detail = "cell left [0,1] at draw " + std::to_string(i);
          return false;
        }
      }
    }
    detail = "100000 random steps stayed in [0,1]";
    return true;
  });

  criterion(3, "election coverage and monotonicity", 60.0, [](std::string& detail) {
    int tested = 0;
    int radius_escalations = 0;
    for (std::uint64_t seed = 0; tested < 200 && seed < 4000; ++seed) {
      GeometricSpec spec;
      spec.node_count = 10 + static_cast<int>((seed * 7) % 51);  // up to 60
      spec.area_side = 100.0;
      spec.radio_range = 25.0 + static_cast<double>(seed % 4) * 8.0;
      spec.energy = {EnergyInit::Kind::Uniform, 20.0, 160.0};
      // Every fourth instance starves the candidate list so the hop radius
      // has to climb.
      const double threshold = seed % 4 == 3 ? 140.0 : 40.0;
      const Topology t = Topology::build_geometric(spec, seed);
      if (t.live_components().size() != 1) continue;
      const Pol pol = build_pol(t, threshold);
      if (pol.ids.empty()) continue;
      ++tested;

      MonitorAssignment a;
      try {
        // select_monitors throws logic_error if the in-loop represented-count
        // check ever fires.
        a = select_monitors(t, pol, 1);
      } catch (const std::logic_error& e) {
        detail = std::string("working-set assertion fired: ") + e.what();
        return false;
      }
      if (a.hop_radius > 1) ++radius_escalations;
      for (int id : t.live_ids()) {
        if (!a.vote_map.contains(id)) {
          detail = "node " + std::to_string(id) + " unrepresented at seed " + std::to_string(seed);
          return false;
        }
        const int target = a.vote_map.at(id);
        const auto d = t.hop_distance(id, target);
        if (!d || *d > a.hop_radius) {
          detail = "coverage violated at seed " + std::to_string(seed);
          return false;
        }
      }
      for (int m : a.monitors) {
        if (ca_parameter(t, m) < threshold) {
          detail = "monitor below threshold at seed " + std::to_string(seed);
          return false;
        }
      }
    }
    if (tested < 200) {
      detail = "only " + std::to_string(tested) + " connected topologies found";
      return false;
    }
    detail = "200 topologies covered; " + std::to_string(radius_escalations) +
             " needed radius escalation";
    return true;
  });

  // Criteria 4 and 6 share the paired-run sweep.
  TrendData trend;
  {
    const ScenarioConfig base = trend_config();
    trend.mean_energy_idf.assign(static_cast<std::size_t>(base.ticks), 0.0);
    trend.mean_energy_spaid.assign(static_cast<std::size_t>(base.ticks), 0.0);
  }

  criterion(6, "paired-run power trend", 120.0, [&trend](std::string& detail) {
    const ScenarioConfig base = trend_config();
    const int seeds = 20;
    auto add_series = [&](std::vector<double>& acc, const std::vector<TickRecord>& trace) {
      double last = 0.0;
      for (long tk = 0; tk < base.ticks; ++tk) {
        if (tk < static_cast<long>(trace.size())) {
          last = trace[static_cast<std::size_t>(tk)].cum_monitor_energy;
        }
        acc[static_cast<std::size_t>(tk)] += last / seeds;
      }
    };

    int idf_not_worse = 0;
    double mean_idf = 0.0;
    double mean_spaid = 0.0;
    for (int seed = 1; seed <= seeds; ++seed) {
      ScenarioConfig cfg = base;
      cfg.seed = static_cast<std::uint64_t>(seed);
      cfg.mode = Mode::Idfadnwca;
      RunResult idf = run(cfg);
      cfg.mode = Mode::Spaid;
      RunResult spaid = run(cfg);
      if (idf.summary.full_reruns <= spaid.summary.full_reruns) ++idf_not_worse;
      mean_idf += static_cast<double>(idf.summary.full_reruns) / seeds;
      mean_spaid += static_cast<double>(spaid.summary.full_reruns) / seeds;
      add_series(trend.mean_energy_idf, idf.trace);
      add_series(trend.mean_energy_spaid, spaid.trace);
      trend.per_seed.push_back({cfg.seed, idf.summary, spaid.summary});
      trend.idf_runs.push_back(std::move(idf));
    }

    const fs::path out_dir = "acceptance_out";
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::ofstream(out_dir / "energy_idfadnwca.csv", std::ios::binary)
        << energy_series_csv(trend.mean_energy_idf);
    std::ofstream(out_dir / "energy_spaid.csv", std::ios::binary)
        << energy_series_csv(trend.mean_energy_spaid);

    detail = "idfadnwca not worse in " + std::to_string(idf_not_worse) + "/20 seeds; mean reruns " +
             fmt_double(mean_idf) + " vs " + fmt_double(mean_spaid) + "; series in " +
             out_dir.string();
    if (idf_not_worse < 18) return false;        // >= 90% of seeds
    if (!(mean_idf < mean_spaid)) return false;  // strictly lower mean
    return true;
  });

  criterion(4, "intra-cluster re-election locality", 0.0, [&trend](std::string& detail) {
    if (trend.idf_runs.empty()) {
      detail = "no clustered runs available (criterion 6 failed earlier)";
      return false;
    }
    long events = 0;
    for (const auto& r : trend.idf_runs) {
      for (const auto& rec : r.trace) {
        for (const auto& stat : rec.reelect_stats) {
          ++events;
          if (stat.role_changes > 2 + stat.stranded) {
            detail = "role changes exceeded 2 + stranded";
            return false;
          }
          if (stat.role_changes > 2) {
            detail = "more than the demoted and promoted roots changed role";
            return false;
          }
        }
      }
    }
    if (events == 0) {
      detail = "no intra-cluster re-elections happened; nothing asserted";
      return false;
    }
    detail = std::to_string(events) + " re-elections, all within the 2 + stranded bound";
    return true;
  });

  criterion(5, "classifier desk-scale learning", 300.0, [](std::string& detail) {
    const auto train = two_bit_separable_dataset(200, 8, 7777);
    int good_seeds = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      GaConfig ga;
      ga.population_size = 40;
      ga.generations = 50;
      ga.seed = seed;

      // Elitism monotonicity on the search itself.
      const EvolveResult evolved = evolve(ga, RuleEncoding::ElementaryRule, 8, train);
      if (!std::is_sorted(evolved.history.begin(), evolved.history.end())) {
        detail = "fitness history regressed at seed " + std::to_string(seed);
        return false;
      }

      TreeConfig tc;  // depth 4, purity 0.95, k = 2
      const CaTree tree = build_tree(train, tc, ga);
      if (training_accuracy(tree, train) >= 0.90) ++good_seeds;
    }
    detail = std::to_string(good_seeds) + "/10 seeds reached 0.90 training accuracy";
    return good_seeds >= 8;
  });

  criterion(7, "end-to-end determinism", 0.0, [](std::string& detail) {
    ScenarioConfig cfg;
    cfg.node_count = 15;
    cfg.area_side = 80.0;
    cfg.radio_range = 40.0;
    cfg.energy_init = {EnergyInit::Kind::Uniform, 60.0, 120.0};
    cfg.member_drain = 0.02;
    cfg.monitor_drain = 1.0;
    cfg.threshold = 15.0;
    cfg.ticks = 150;
    cfg.seed = 11;
    cfg.train_count = 60;
    cfg.intrusion_count = 10;
    cfg.ga.generations = 10;

    const fs::path base = fs::temp_directory_path() / "adhocids_acceptance";
    fs::remove_all(base);

    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    };

    emit_trace(run(cfg), base / "run_a");
    emit_trace(run(cfg), base / "run_b");
    for (const char* name : {"trace.csv", "summary.txt", "energy.csv"}) {
      if (slurp(base / "run_a" / name) != slurp(base / "run_b" / name)) {
        detail = std::string("run outputs diverged in ") + name;
        return false;
      }
    }

    const std::vector<std::uint64_t> seeds{1, 2};
    emit_compare(compare(cfg, seeds), base / "cmp_a");
    emit_compare(compare(cfg, seeds), base / "cmp_b");
    for (const char* name : {"compare.txt", "energy_idfadnwca.csv", "energy_spaid.csv"}) {
      if (slurp(base / "cmp_a" / name) != slurp(base / "cmp_b" / name)) {
        detail = std::string("compare outputs diverged in ") + name;
        return false;
      }
    }
    fs::remove_all(base);
    detail = "repeated run and compare invocations byte-identical";
    return true;
  });

  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return 1;
}
