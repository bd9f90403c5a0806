#include "adhocids/classifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace adhocids {

void validate(const TreeConfig& cfg) {
  if (cfg.target_basins < 2) throw std::invalid_argument("tree: target_basins must be >= 2");
  if (cfg.depth_limit < 0) throw std::invalid_argument("tree: depth_limit must be >= 0");
  if (cfg.purity_stop <= 0.0 || cfg.purity_stop > 1.0) {
    throw std::invalid_argument("tree: purity_stop must be in (0, 1]");
  }
  if (cfg.attractor_max_steps < 1) throw std::invalid_argument("tree: attractor_max_steps must be >= 1");
}

namespace {

struct MajorityInfo {
  int klass = 0;
  double purity = 0.0;
};

MajorityInfo majority_of(const std::vector<PatternVector>& patterns, int class_count) {
  std::vector<long> counts(static_cast<std::size_t>(class_count), 0);
  for (const auto& p : patterns) ++counts[static_cast<std::size_t>(p.label)];
  const auto it = std::max_element(counts.begin(), counts.end());
  MajorityInfo m;
  m.klass = static_cast<int>(it - counts.begin());
  m.purity = static_cast<double>(*it) / static_cast<double>(patterns.size());
  return m;
}

struct TreeBuilder {
  const TreeConfig& tc;
  const GaConfig& gc;
  int class_count = 0;
  int lattice_bits = 0;
  std::uint64_t node_counter = 0;
  std::vector<CaTree::Node> nodes;

  int add_leaf(int klass) {
    CaTree::Node n;
    n.leaf = true;
    n.klass = klass;
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  // Best splitting chromosome from the evolved pool: highest fitness, then
  // basin count closest to target_basins, then smallest genome. Chromosomes
  // whose CA keeps all patterns in one basin cannot make progress and are
  // skipped.
  std::optional<std::pair<Chromosome, BasinDistribution>> pick_splitter(
      const std::vector<Chromosome>& pool, const std::vector<PatternVector>& patterns) {
    std::optional<Chromosome> best;
    std::optional<BasinDistribution> best_dist;
    int best_gap = 0;
    for (const auto& c : pool) {
      if (best && *c.fitness < *best->fitness) continue;
      const AttractorIndex index = decode_attractors(c, tc.encoding, lattice_bits, tc.attractor_max_steps);
      BasinDistribution dist = induce_distribution(index, patterns, class_count);
      if (dist.histograms.size() < 2) continue;
      const int gap = std::abs(static_cast<int>(dist.histograms.size()) - tc.target_basins);
      if (!best || *c.fitness > *best->fitness || gap < best_gap ||
          (gap == best_gap && c.genome < best->genome)) {
        best = c;
        best_dist = std::move(dist);
        best_gap = gap;
      }
    }
    if (!best) return std::nullopt;
    return std::make_pair(std::move(*best), std::move(*best_dist));
  }

  int build(const std::vector<PatternVector>& patterns, int depth) {
    const MajorityInfo m = majority_of(patterns, class_count);
    if (m.purity >= tc.purity_stop || depth >= tc.depth_limit) {
      return add_leaf(m.klass);
    }

    GaConfig node_ga = gc;
    node_ga.seed = mix64(gc.seed ^ mix64(node_counter++));
    const EvolveResult evolved =
        evolve(node_ga, tc.encoding, lattice_bits, patterns, tc.attractor_max_steps);

    auto split = pick_splitter(evolved.population, patterns);
    if (!split) {
      return add_leaf(m.klass);
    }

    CaTree::Node node;
    node.leaf = false;
    node.klass = m.klass;
    if (tc.encoding == RuleEncoding::ElementaryRule) {
      node.rule = decode_rule(split->first);
    } else {
      node.matrix = decode_matrix(split->first, lattice_bits);
    }
    const int self = static_cast<int>(nodes.size());
    nodes.push_back(std::move(node));

    const AttractorIndex index =
        decode_attractors(split->first, tc.encoding, lattice_bits, tc.attractor_max_steps);
    std::map<std::uint64_t, std::uint64_t> basin_of;
    std::map<std::uint64_t, std::vector<PatternVector>> groups;
    for (const auto& p : patterns) {
      const std::uint64_t state = pack_cells(p.bits);
      auto mem = basin_of.find(state);
      if (mem == basin_of.end()) mem = basin_of.emplace(state, index.attractor_of(state)).first;
      groups[mem->second].push_back(p);
    }
    for (auto& [basin, subset] : groups) {
      const int child = build(subset, depth + 1);
      nodes[static_cast<std::size_t>(self)].children.emplace(basin, child);
    }
    return self;
  }
};

}  // namespace

void CaTree::rebuild_indexes() {
  indexes_.clear();
  indexes_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.leaf) continue;
    if (n.rule) {
      indexes_[i].emplace(*n.rule, lattice_bits_, max_steps_);
    } else {
      indexes_[i].emplace(*n.matrix, max_steps_);
    }
  }
}

int CaTree::depth() const {
  if (nodes_.empty()) return 0;
  // Iterative DFS over (node, depth).
  int max_depth = 0;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    max_depth = std::max(max_depth, d);
    for (const auto& [basin, child] : nodes_[static_cast<std::size_t>(i)].children) {
      stack.emplace_back(child, d + 1);
    }
  }
  return max_depth;
}

int CaTree::classify(const PatternVector& p) const {
  if (static_cast<int>(p.bits.size()) != lattice_bits_) {
    throw std::invalid_argument("classify: pattern length does not match tree lattice");
  }
  const std::uint64_t state = pack_cells(p.bits);
  int cur = 0;
  while (true) {
    const Node& n = nodes_[static_cast<std::size_t>(cur)];
    if (n.leaf) return n.klass;
    std::uint64_t basin;
    try {
      basin = indexes_[static_cast<std::size_t>(cur)]->attractor_of(state);
    } catch (const NoConvergence&) {
      return n.klass;
    }
    const auto it = n.children.find(basin);
    if (it == n.children.end()) return n.klass;
    cur = it->second;
  }
}

CaTree build_tree(const std::vector<PatternVector>& train, const TreeConfig& tree_cfg,
                  const GaConfig& ga_cfg) {
  validate(tree_cfg);
  validate(ga_cfg);
  if (train.empty()) throw std::invalid_argument("build_tree: empty training set");
  const int n = static_cast<int>(train.front().bits.size());
  if (n < 1 || n > 64) throw std::invalid_argument("build_tree: lattice size must be in [1, 64]");
  for (const auto& p : train) {
    if (static_cast<int>(p.bits.size()) != n) {
      throw std::invalid_argument("build_tree: mixed pattern lengths");
    }
    if (p.label < 0) throw std::invalid_argument("build_tree: unlabeled training pattern");
  }

  TreeBuilder builder{tree_cfg, ga_cfg, 0, 0, 0, {}};
  builder.class_count = max_label(train) + 1;
  builder.lattice_bits = n;
  builder.build(train, 0);

  CaTree tree;
  tree.lattice_bits_ = n;
  tree.class_count_ = builder.class_count;
  tree.encoding_ = tree_cfg.encoding;
  tree.max_steps_ = tree_cfg.attractor_max_steps;
  tree.nodes_ = std::move(builder.nodes);
  tree.rebuild_indexes();
  return tree;
}

double training_accuracy(const CaTree& tree, const std::vector<PatternVector>& patterns) {
  if (patterns.empty()) throw std::invalid_argument("training_accuracy: empty pattern set");
  long hits = 0;
  for (const auto& p : patterns) {
    if (tree.classify(p) == p.label) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(patterns.size());
}

std::string serialize_tree(const CaTree& tree) {
  std::ostringstream out;
  out << "catree v1\n";
  out << "bits " << tree.lattice_bits() << "\n";
  out << "classes " << tree.class_count() << "\n";
  out << "encoding " << (tree.encoding() == RuleEncoding::ElementaryRule ? "rule" : "matrix") << "\n";
  out << "steps " << tree.attractor_max_steps() << "\n";
  out << "nodes " << tree.node_count() << "\n";
  for (int i = 0; i < tree.node_count(); ++i) {
    const auto& n = tree.node(i);
    if (n.leaf) {
      out << "node " << i << " leaf " << n.klass << "\n";
    } else if (n.rule) {
      out << "node " << i << " internal majority " << n.klass << " rule " << n.rule->rule_number
          << "\n";
    } else {
      out << "node " << i << " internal majority " << n.klass << " matrix";
      for (int r = 0; r < n.matrix->size(); ++r) {
        out << ' ' << cells_to_string(n.matrix->row_mask(r), n.matrix->size());
      }
      out << "\n";
    }
  }
  for (int i = 0; i < tree.node_count(); ++i) {
    for (const auto& [basin, child] : tree.node(i).children) {
      out << "edge " << i << ' ' << cells_to_string(basin, tree.lattice_bits()) << ' ' << child
          << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

namespace {

[[noreturn]] void tree_error(int line, const std::string& what) {
  throw std::invalid_argument("tree format: line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

long parse_long(const std::string& tok, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    tree_error(line, "bad integer '" + tok + "'");
  }
  if (used != tok.size()) tree_error(line, "bad integer '" + tok + "'");
  return v;
}

}  // namespace

CaTree parse_tree(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto next_tokens = [&](const char* expect) {
    while (std::getline(in, line)) {
      ++line_no;
      auto tokens = tokenize(line);
      if (!tokens.empty()) return tokens;
    }
    tree_error(line_no, std::string("unexpected end of input, expected ") + expect);
  };

  auto header = [&](const char* key) {
    auto tokens = next_tokens(key);
    if (tokens.size() != 2 || tokens[0] != key) tree_error(line_no, std::string("expected '") + key + " <value>'");
    return tokens[1];
  };

  {
    auto tokens = next_tokens("catree v1");
    if (tokens.size() != 2 || tokens[0] != "catree" || tokens[1] != "v1") {
      tree_error(line_no, "expected 'catree v1'");
    }
  }

  CaTree tree;
  tree.lattice_bits_ = static_cast<int>(parse_long(header("bits"), line_no));
  if (tree.lattice_bits_ < 1 || tree.lattice_bits_ > 64) tree_error(line_no, "bits out of range");
  tree.class_count_ = static_cast<int>(parse_long(header("classes"), line_no));
  if (tree.class_count_ < 1) tree_error(line_no, "classes must be >= 1");
  const std::string enc = header("encoding");
  if (enc == "rule") {
    tree.encoding_ = RuleEncoding::ElementaryRule;
  } else if (enc == "matrix") {
    tree.encoding_ = RuleEncoding::Matrix;
  } else {
    tree_error(line_no, "encoding must be 'rule' or 'matrix'");
  }
  tree.max_steps_ = parse_long(header("steps"), line_no);
  if (tree.max_steps_ < 1) tree_error(line_no, "steps must be >= 1");
  const long node_count = parse_long(header("nodes"), line_no);
  if (node_count < 1) tree_error(line_no, "nodes must be >= 1");
  tree.nodes_.resize(static_cast<std::size_t>(node_count));

  std::vector<char> declared(static_cast<std::size_t>(node_count), 0);
  for (long i = 0; i < node_count; ++i) {
    auto tokens = next_tokens("node line");
    if (tokens.size() < 3 || tokens[0] != "node") tree_error(line_no, "expected node line");
    const long id = parse_long(tokens[1], line_no);
    if (id < 0 || id >= node_count) tree_error(line_no, "node id out of range");
    if (declared[static_cast<std::size_t>(id)]) tree_error(line_no, "duplicate node id");
    declared[static_cast<std::size_t>(id)] = 1;
    CaTree::Node& n = tree.nodes_[static_cast<std::size_t>(id)];
    if (tokens[2] == "leaf") {
      if (tokens.size() != 4) tree_error(line_no, "leaf line must be 'node <id> leaf <class>'");
      n.leaf = true;
      n.klass = static_cast<int>(parse_long(tokens[3], line_no));
    } else if (tokens[2] == "internal") {
      if (tokens.size() < 6 || tokens[3] != "majority") {
        tree_error(line_no, "internal line must carry 'majority <class>'");
      }
      n.leaf = false;
      n.klass = static_cast<int>(parse_long(tokens[4], line_no));
      if (tokens[5] == "rule") {
        if (tokens.size() != 7) tree_error(line_no, "rule node needs one rule number");
        n.rule = CaRule::from_number(static_cast<int>(parse_long(tokens[6], line_no)));
      } else if (tokens[5] == "matrix") {
        const int mn = tree.lattice_bits_;
        if (static_cast<int>(tokens.size()) != 6 + mn) tree_error(line_no, "matrix node needs one row per cell");
        std::vector<std::vector<std::uint8_t>> rows;
        for (int r = 0; r < mn; ++r) {
          const std::string& bits = tokens[static_cast<std::size_t>(6 + r)];
          if (static_cast<int>(bits.size()) != mn) tree_error(line_no, "matrix row width mismatch");
          rows.push_back(unpack_cells(cells_from_string(bits), mn));
        }
        n.matrix = DependencyMatrix::from_rows(rows);
      } else {
        tree_error(line_no, "internal node must carry 'rule' or 'matrix'");
      }
    } else {
      tree_error(line_no, "node kind must be 'leaf' or 'internal'");
    }
    if (n.klass < 0 || n.klass >= tree.class_count_) tree_error(line_no, "class id out of range");
  }
  for (long i = 0; i < node_count; ++i) {
    if (!declared[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("tree format: node " + std::to_string(i) + " never declared");
    }
  }

  while (true) {
    auto tokens = next_tokens("edge line or end");
    if (tokens.size() == 1 && tokens[0] == "end") break;
    if (tokens.size() != 4 || tokens[0] != "edge") tree_error(line_no, "expected edge line or 'end'");
    const long parent = parse_long(tokens[1], line_no);
    const long child = parse_long(tokens[3], line_no);
    if (parent < 0 || parent >= node_count || child < 0 || child >= node_count) {
      tree_error(line_no, "edge endpoint out of range");
    }
    if (static_cast<int>(tokens[2].size()) != tree.lattice_bits_) {
      tree_error(line_no, "edge basin width mismatch");
    }
    CaTree::Node& p = tree.nodes_[static_cast<std::size_t>(parent)];
    if (p.leaf) tree_error(line_no, "edge from a leaf node");
    const std::uint64_t basin = cells_from_string(tokens[2]);
    if (!p.children.emplace(basin, static_cast<int>(child)).second) {
      tree_error(line_no, "duplicate basin edge");
    }
  }

  for (long i = 0; i < node_count; ++i) {
    const auto& n = tree.nodes_[static_cast<std::size_t>(i)];
    if (!n.leaf && n.children.empty()) {
      throw std::invalid_argument("tree format: internal node " + std::to_string(i) + " has no children");
    }
  }

  tree.rebuild_indexes();
  return tree;
}

}  // namespace adhocids
