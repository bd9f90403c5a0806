#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adhocids/ca.hpp"
#include "adhocids/ga.hpp"
#include "adhocids/pattern.hpp"

namespace adhocids {

struct TreeConfig {
  int target_basins = 2;  // preferred basin count per split
  int depth_limit = 4;
  double purity_stop = 0.95;
  RuleEncoding encoding = RuleEncoding::ElementaryRule;
  long attractor_max_steps = kDefaultAttractorSteps;

  bool operator==(const TreeConfig&) const = default;
};

void validate(const TreeConfig& cfg);

// Inverted tree of CA classifiers. Each internal node holds one evolved CA;
// a pattern descends through the basin its state falls into, and leaves carry
// the class decision. Immutable once built.
class CaTree {
 public:
  struct Node {
    bool leaf = true;
    int klass = 0;  // leaf class; for internal nodes, the majority fallback
    std::optional<CaRule> rule;
    std::optional<DependencyMatrix> matrix;
    std::map<std::uint64_t, int> children;  // attractor id -> node index
  };

  int lattice_bits() const { return lattice_bits_; }
  int class_count() const { return class_count_; }
  RuleEncoding encoding() const { return encoding_; }
  long attractor_max_steps() const { return max_steps_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  int depth() const;

  // Routes the pattern to a leaf and returns its class. A basin never seen
  // in training falls back to the enclosing node's majority class.
  int classify(const PatternVector& p) const;

 private:
  friend CaTree build_tree(const std::vector<PatternVector>&, const TreeConfig&, const GaConfig&);
  friend CaTree parse_tree(const std::string&);

  void rebuild_indexes();

  int lattice_bits_ = 0;
  int class_count_ = 0;
  RuleEncoding encoding_ = RuleEncoding::ElementaryRule;
  long max_steps_ = kDefaultAttractorSteps;
  std::vector<Node> nodes_;
  std::vector<std::optional<AttractorIndex>> indexes_;  // per internal node
};

// Grows the tree top-down: each impure node runs a GA search for a CA whose
// basins separate the node's classes, then recurses per basin. Recursion
// stops at purity_stop, at depth_limit, or when no candidate CA splits the
// patterns.
CaTree build_tree(const std::vector<PatternVector>& train, const TreeConfig& tree_cfg,
                  const GaConfig& ga_cfg);

// Fraction of patterns whose classify() result matches their label.
double training_accuracy(const CaTree& tree, const std::vector<PatternVector>& patterns);

// Line-oriented text format, stable across runs; see README for the grammar.
std::string serialize_tree(const CaTree& tree);
CaTree parse_tree(const std::string& text);

}  // namespace adhocids
