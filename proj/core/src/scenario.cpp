#include "adhocids/scenario.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <vector>

#include "adhocids/report.hpp"

namespace adhocids {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& message) {
  throw ScenarioError(ScenarioError::Kind::Parse, line, "line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

long to_long(const std::string& tok, int line) {
  long v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) parse_fail(line, "bad integer '" + tok + "'");
  return v;
}

std::uint64_t to_u64(const std::string& tok, int line) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    parse_fail(line, "bad unsigned integer '" + tok + "'");
  }
  return v;
}

double to_double(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) parse_fail(line, "bad number '" + tok + "'");
    return v;
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(line, "bad number '" + tok + "'");
  }
}

std::vector<std::uint8_t> to_bits(const std::string& tok, int line) {
  std::vector<std::uint8_t> bits;
  bits.reserve(tok.size());
  for (char c : tok) {
    if (c != '0' && c != '1') parse_fail(line, "bit string may contain only 0 and 1");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (bits.empty()) parse_fail(line, "empty bit string");
  return bits;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  ScenarioConfig cfg;
  bool have_node_count = false;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    const auto tokens = tokenize(body);
    if (tokens.empty()) continue;

    const std::string& key = tokens[0];
    const auto args = static_cast<int>(tokens.size()) - 1;
    auto need = [&](int count) {
      if (args != count) {
        parse_fail(line_no, "key '" + key + "' takes " + std::to_string(count) + " value(s)");
      }
    };
    auto once = [&]() {
      if (!seen.insert(key).second) parse_fail(line_no, "duplicate key '" + key + "'");
    };

    if (key == "node_count") {
      once();
      need(1);
      cfg.node_count = static_cast<int>(to_long(tokens[1], line_no));
      have_node_count = true;
    } else if (key == "area_side") {
      once();
      need(1);
      cfg.area_side = to_double(tokens[1], line_no);
    } else if (key == "radio_range") {
      once();
      need(1);
      cfg.radio_range = to_double(tokens[1], line_no);
    } else if (key == "energy_init") {
      once();
      if (args < 1) parse_fail(line_no, "energy_init needs a distribution");
      if (tokens[1] == "constant") {
        need(2);
        cfg.energy_init = {EnergyInit::Kind::Constant, to_double(tokens[2], line_no),
                           to_double(tokens[2], line_no)};
      } else if (tokens[1] == "uniform") {
        need(3);
        cfg.energy_init = {EnergyInit::Kind::Uniform, to_double(tokens[2], line_no),
                           to_double(tokens[3], line_no)};
      } else {
        parse_fail(line_no, "energy_init must be 'constant <v>' or 'uniform <lo> <hi>'");
      }
    } else if (key == "member_drain") {
      once();
      need(1);
      cfg.member_drain = to_double(tokens[1], line_no);
    } else if (key == "monitor_drain") {
      once();
      need(1);
      cfg.monitor_drain = to_double(tokens[1], line_no);
    } else if (key == "threshold") {
      once();
      need(1);
      cfg.threshold = to_double(tokens[1], line_no);
    } else if (key == "hop_radius") {
      once();
      need(1);
      cfg.hop_radius = static_cast<int>(to_long(tokens[1], line_no));
    } else if (key == "mode") {
      once();
      need(1);
      const auto m = mode_from_name(tokens[1]);
      if (!m) parse_fail(line_no, "mode must be 'idfadnwca' or 'spaid'");
      cfg.mode = *m;
    } else if (key == "ticks") {
      once();
      need(1);
      cfg.ticks = to_long(tokens[1], line_no);
    } else if (key == "seed") {
      once();
      need(1);
      cfg.seed = to_u64(tokens[1], line_no);
    } else if (key == "pattern_bits") {
      once();
      need(1);
      cfg.pattern_bits = static_cast<int>(to_long(tokens[1], line_no));
    } else if (key == "classes") {
      once();
      need(1);
      cfg.classes = static_cast<int>(to_long(tokens[1], line_no));
    } else if (key == "train_count") {
      once();
      need(1);
      cfg.train_count = static_cast<int>(to_long(tokens[1], line_no));
    } else if (key == "intrusion_count") {
      once();
      need(1);
      cfg.intrusion_count = static_cast<int>(to_long(tokens[1], line_no));
    } else if (key == "ga_population") {
      once();
      need(1);
      cfg.ga.population_size = static_cast<int>(to_long(tokens[1], line_no));
    } else if (key == "ga_generations") {
      once();
      need(1);
      cfg.ga.generations = static_cast<int>(to_long(tokens[1], line_no));
    } else if (key == "ga_mutation") {
      once();
      need(1);
      cfg.ga.mutation_rate = to_double(tokens[1], line_no);
    } else if (key == "ga_elite") {
      once();
      need(1);
      cfg.ga.elite_fraction = to_double(tokens[1], line_no);
    } else if (key == "ga_cull") {
      once();
      need(1);
      cfg.ga.cull_fraction = to_double(tokens[1], line_no);
    } else if (key == "tree_basins") {
      once();
      need(1);
      cfg.tree.target_basins = static_cast<int>(to_long(tokens[1], line_no));
    } else if (key == "tree_depth_limit") {
      once();
      need(1);
      cfg.tree.depth_limit = static_cast<int>(to_long(tokens[1], line_no));
    } else if (key == "tree_purity_stop") {
      once();
      need(1);
      cfg.tree.purity_stop = to_double(tokens[1], line_no);
    } else if (key == "tree_encoding") {
      once();
      need(1);
      if (tokens[1] == "rule") {
        cfg.tree.encoding = RuleEncoding::ElementaryRule;
      } else if (tokens[1] == "matrix") {
        cfg.tree.encoding = RuleEncoding::Matrix;
      } else {
        parse_fail(line_no, "tree_encoding must be 'rule' or 'matrix'");
      }
    } else if (key == "tree_max_steps") {
      once();
      need(1);
      cfg.tree.attractor_max_steps = to_long(tokens[1], line_no);
    } else if (key == "train") {
      need(2);
      PatternVector p;
      p.label = static_cast<int>(to_long(tokens[1], line_no));
      p.bits = to_bits(tokens[2], line_no);
      cfg.train_patterns.push_back(std::move(p));
    } else if (key == "event") {
      need(4);
      IntrusionEvent ev;
      ev.tick = to_long(tokens[1], line_no);
      ev.source = static_cast<int>(to_long(tokens[2], line_no));
      ev.label = static_cast<int>(to_long(tokens[3], line_no));
      ev.bits = to_bits(tokens[4], line_no);
      cfg.events.push_back(std::move(ev));
    } else if (key == "join") {
      need(4);
      JoinEvent j;
      j.tick = to_long(tokens[1], line_no);
      j.x = to_double(tokens[2], line_no);
      j.y = to_double(tokens[3], line_no);
      j.energy = to_double(tokens[4], line_no);
      cfg.joins.push_back(j);
    } else {
      parse_fail(line_no, "unknown key '" + key + "'");
    }
  }

  if (!have_node_count) {
    throw ScenarioError(ScenarioError::Kind::Validation, 0, "missing required key: node_count");
  }
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(ScenarioError::Kind::Validation, 0, e.what());
  }
  return cfg;
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "node_count " << cfg.node_count << "\n";
  out << "area_side " << fmt_double(cfg.area_side) << "\n";
  out << "radio_range " << fmt_double(cfg.radio_range) << "\n";
  if (cfg.energy_init.kind == EnergyInit::Kind::Constant) {
    out << "energy_init constant " << fmt_double(cfg.energy_init.a) << "\n";
  } else {
    out << "energy_init uniform " << fmt_double(cfg.energy_init.a) << ' '
        << fmt_double(cfg.energy_init.b) << "\n";
  }
  out << "member_drain " << fmt_double(cfg.member_drain) << "\n";
  out << "monitor_drain " << fmt_double(cfg.monitor_drain) << "\n";
  out << "threshold " << fmt_double(cfg.threshold) << "\n";
  out << "hop_radius " << cfg.hop_radius << "\n";
  out << "mode " << mode_name(cfg.mode) << "\n";
  out << "ticks " << cfg.ticks << "\n";
  out << "seed " << cfg.seed << "\n";
  out << "pattern_bits " << cfg.pattern_bits << "\n";
  out << "classes " << cfg.classes << "\n";
  out << "train_count " << cfg.train_count << "\n";
  out << "intrusion_count " << cfg.intrusion_count << "\n";
  out << "ga_population " << cfg.ga.population_size << "\n";
  out << "ga_generations " << cfg.ga.generations << "\n";
  out << "ga_mutation " << fmt_double(cfg.ga.mutation_rate) << "\n";
  out << "ga_elite " << fmt_double(cfg.ga.elite_fraction) << "\n";
  out << "ga_cull " << fmt_double(cfg.ga.cull_fraction) << "\n";
  out << "tree_basins " << cfg.tree.target_basins << "\n";
  out << "tree_depth_limit " << cfg.tree.depth_limit << "\n";
  out << "tree_purity_stop " << fmt_double(cfg.tree.purity_stop) << "\n";
  out << "tree_encoding " << (cfg.tree.encoding == RuleEncoding::ElementaryRule ? "rule" : "matrix")
      << "\n";
  out << "tree_max_steps " << cfg.tree.attractor_max_steps << "\n";
  for (const auto& p : cfg.train_patterns) {
    out << "train " << p.label << ' ' << cells_to_string(pack_cells(p.bits), static_cast<int>(p.bits.size()))
        << "\n";
  }
  for (const auto& ev : cfg.events) {
    out << "event " << ev.tick << ' ' << ev.source << ' ' << ev.label << ' '
        << cells_to_string(pack_cells(ev.bits), static_cast<int>(ev.bits.size())) << "\n";
  }
  for (const auto& j : cfg.joins) {
    out << "join " << j.tick << ' ' << fmt_double(j.x) << ' ' << fmt_double(j.y) << ' '
        << fmt_double(j.energy) << "\n";
  }
  return out.str();
}

}  // namespace adhocids
