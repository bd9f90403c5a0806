// Command-line front end: scenario runs, mode comparisons, classifier
// training, and basin inspection.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "adhocids/ca.hpp"
#include "adhocids/classifier.hpp"
#include "adhocids/report.hpp"
#include "adhocids/scenario.hpp"
#include "adhocids/simulator.hpp"

namespace {

using namespace adhocids;

struct CliError : std::runtime_error {
  CliError(std::string category, const std::string& message)
      : std::runtime_error(message), category(std::move(category)) {}
  std::string category;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("io", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError("io", "cannot write " + path.string());
  out << content;
  if (!out.flush()) throw CliError("io", "write failed for " + path.string());
}

ScenarioConfig load_scenario(const std::string& path) {
  try {
    return parse_scenario(read_file(path));
  } catch (const ScenarioError& e) {
    throw CliError(e.kind == ScenarioError::Kind::Parse ? "parse" : "validation", e.what());
  }
}

void print_config(const ScenarioConfig& cfg) {
  std::istringstream lines(serialize_scenario(cfg));
  std::string line;
  while (std::getline(lines, line)) std::cout << "# " << line << "\n";
}

struct RunOptions {
  std::string scenario_path;
  std::string mode;
  long ticks = -1;
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "out";
};

void apply_overrides(ScenarioConfig& cfg, const RunOptions& opt) {
  if (!opt.mode.empty()) {
    const auto m = mode_from_name(opt.mode);
    if (!m) throw CliError("usage", "mode must be 'idfadnwca' or 'spaid'");
    cfg.mode = *m;
  }
  if (opt.ticks > 0) cfg.ticks = opt.ticks;
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw CliError("validation", e.what());
  }
}

int cmd_run(const RunOptions& opt) {
  ScenarioConfig cfg = load_scenario(opt.scenario_path);
  if (opt.seeds.size() > 1) throw CliError("usage", "run takes at most one --seed");
  if (!opt.seeds.empty()) cfg.seed = opt.seeds.front();
  apply_overrides(cfg, opt);

  print_config(cfg);
  const RunResult result = run(cfg);
  const auto files = emit_trace(result, opt.out_dir);
  std::cout << summary_text(result);
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
  return 0;
}

int cmd_compare(const RunOptions& opt) {
  ScenarioConfig cfg = load_scenario(opt.scenario_path);
  if (!opt.mode.empty()) throw CliError("usage", "compare runs both modes; --mode is not allowed");
  apply_overrides(cfg, opt);
  std::vector<std::uint64_t> seeds = opt.seeds;
  if (seeds.empty()) seeds.push_back(cfg.seed);

  print_config(cfg);
  std::cout << "# seeds";
  for (auto s : seeds) std::cout << ' ' << s;
  std::cout << "\n";
  const CompareReport rep = compare(cfg, seeds);
  const auto files = emit_compare(rep, opt.out_dir);
  std::cout << compare_text(rep);
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
  return 0;
}

struct TrainOptions {
  std::string patterns_path;
  std::string out_path = "tree.txt";
  std::uint64_t seed = 1;
  GaConfig ga;
  TreeConfig tree;
};

std::vector<PatternVector> load_patterns(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<PatternVector> out;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream fields(line);
    int label = 0;
    std::string bits;
    if (!(fields >> label)) continue;  // blank line
    if (!(fields >> bits)) {
      throw CliError("parse", "pattern file line " + std::to_string(line_no) +
                                  ": expected '<label> <bits>'");
    }
    PatternVector p;
    p.label = label;
    for (char c : bits) {
      if (c != '0' && c != '1') {
        throw CliError("parse", "pattern file line " + std::to_string(line_no) +
                                    ": bits may contain only 0 and 1");
      }
      p.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    out.push_back(std::move(p));
  }
  if (out.empty()) throw CliError("validation", "pattern file holds no patterns");
  return out;
}

int cmd_train(const TrainOptions& opt) {
  const auto patterns = load_patterns(opt.patterns_path);
  GaConfig ga = opt.ga;
  ga.seed = opt.seed;
  std::cout << "# patterns " << patterns.size() << "\n";
  std::cout << "# seed " << opt.seed << "\n";
  try {
    const CaTree tree = build_tree(patterns, opt.tree, ga);
    write_file(opt.out_path, serialize_tree(tree));
    std::cout << "training_accuracy " << fmt_double(training_accuracy(tree, patterns)) << "\n";
    std::cout << "tree_depth " << tree.depth() << "\n";
    std::cout << "wrote " << opt.out_path << "\n";
  } catch (const std::invalid_argument& e) {
    throw CliError("validation", e.what());
  }
  return 0;
}

int cmd_basins(int rule, int lattice, std::string encoding_unused) {
  (void)encoding_unused;
  if (lattice < 1 || lattice > kMaxEnumerationBits) {
    throw CliError("validation", "lattice size must be in [1, 16]");
  }
  BasinPartition part;
  try {
    part = enumerate_basins(CaRule::from_number(rule), lattice);
  } catch (const std::invalid_argument& e) {
    throw CliError("validation", e.what());
  }
  std::cout << "rule " << rule << "\n";
  std::cout << "lattice " << lattice << "\n";
  std::cout << "basins " << part.basin_count() << "\n";
  for (std::uint32_t attractor : part.attractors) {
    std::cout << "basin " << cells_to_string(attractor, lattice) << " states";
    for (std::uint32_t s = 0; s < part.attractor_of.size(); ++s) {
      if (part.attractor_of[s] == attractor) std::cout << ' ' << cells_to_string(s, lattice);
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power-aware monitor election and CA-based anomaly detection for ad hoc networks"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one scenario and emit its trace");
  run_cmd->add_option("scenario", run_opt.scenario_path, "Scenario file")->required();
  run_cmd->add_option("--mode", run_opt.mode, "Override the protocol mode");
  run_cmd->add_option("--ticks", run_opt.ticks, "Override the tick count");
  run_cmd->add_option("--seed", run_opt.seeds, "Override the seed");
  run_cmd->add_option("--out", run_opt.out_dir, "Output directory");

  RunOptions cmp_opt;
  CLI::App* cmp_cmd = app.add_subcommand("compare", "Run both modes over paired seeds");
  cmp_cmd->add_option("scenario", cmp_opt.scenario_path, "Scenario file")->required();
  cmp_cmd->add_option("--ticks", cmp_opt.ticks, "Override the tick count");
  cmp_cmd->add_option("--seed", cmp_opt.seeds, "Seed (repeatable)");
  cmp_cmd->add_option("--out", cmp_opt.out_dir, "Output directory");
  cmp_cmd->add_option("--mode", cmp_opt.mode, "Rejected; compare always runs both modes");

  TrainOptions train_opt;
  CLI::App* train_cmd = app.add_subcommand("train", "Build and serialize a classifier tree");
  train_cmd->add_option("patterns", train_opt.patterns_path, "Labeled pattern file")->required();
  train_cmd->add_option("--out", train_opt.out_path, "Tree output path");
  train_cmd->add_option("--seed", train_opt.seed, "Search seed");
  train_cmd->add_option("--population", train_opt.ga.population_size, "GA population");
  train_cmd->add_option("--generations", train_opt.ga.generations, "GA generations");
  train_cmd->add_option("--mutation", train_opt.ga.mutation_rate, "GA mutation rate");
  train_cmd->add_option("--elite", train_opt.ga.elite_fraction, "GA elite fraction");
  train_cmd->add_option("--cull", train_opt.ga.cull_fraction, "GA cull fraction");
  train_cmd->add_option("--depth-limit", train_opt.tree.depth_limit, "Tree depth limit");
  train_cmd->add_option("--purity-stop", train_opt.tree.purity_stop, "Purity stop threshold");
  train_cmd->add_option("--basins", train_opt.tree.target_basins, "Preferred basin count");
  std::string train_encoding = "rule";
  train_cmd->add_option("--encoding", train_encoding, "Chromosome encoding: rule or matrix");

  int basins_rule = 0;
  int basins_lattice = 0;
  CLI::App* basins_cmd = app.add_subcommand("basins", "Print the basin partition of a rule");
  basins_cmd->add_option("--rule", basins_rule, "Rule number [0, 255]")->required();
  basins_cmd->add_option("--n", basins_lattice, "Lattice size [1, 16]")->required();

  try {
    app.parse(argc, argv);

    if (run_cmd->parsed()) return cmd_run(run_opt);
    if (cmp_cmd->parsed()) return cmd_compare(cmp_opt);
    if (train_cmd->parsed()) {
      if (train_encoding == "matrix") {
        train_opt.tree.encoding = RuleEncoding::Matrix;
      } else if (train_encoding != "rule") {
        throw CliError("usage", "encoding must be 'rule' or 'matrix'");
      }
      return cmd_train(train_opt);
    }
    if (basins_cmd->parsed()) return cmd_basins(basins_rule, basins_lattice, "");
    throw CliError("usage", "no subcommand given");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.category << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: run: " << e.what() << "\n";
    return 1;
  }
}
