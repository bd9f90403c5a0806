#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace adhocids {

// Elementary 3-neighbourhood rule under Wolfram numbering: the next state for
// neighbourhood (left, self, right) is bit (left<<2 | self<<1 | right) of the
// rule number, so neighbourhood (1,1,1) sits at the most significant bit.
struct CaRule {
  int rule_number = 0;
  std::array<std::uint8_t, 8> table{};

  static CaRule from_number(int rule_number);

  std::uint8_t next(std::uint8_t left, std::uint8_t self, std::uint8_t right) const {
    return table[static_cast<std::size_t>((left << 2) | (self << 1) | right)];
  }
};

// Fixed-length bit lattice with a null boundary: cells beyond either end read
// as 0.
struct BinaryLattice {
  std::vector<std::uint8_t> cells;
};

BinaryLattice step_binary(const CaRule& rule, const BinaryLattice& lat);

// Packed lattice encoding: cell 0 occupies the most significant of the n low
// bits, so numeric order of packed states equals lexicographic order of the
// cell vectors. n is limited to 64.
std::uint64_t pack_cells(const std::vector<std::uint8_t>& cells);
std::vector<std::uint8_t> unpack_cells(std::uint64_t state, int n);
std::string cells_to_string(std::uint64_t state, int n);
std::uint64_t cells_from_string(const std::string& bits);

std::uint64_t step_packed(const CaRule& rule, std::uint64_t state, int n);

// Fuzzy lattice: each cell holds a rational degree in [0, 1].
struct FcaState {
  std::vector<double> cells;
};

// n x n 0/1 dependency matrix form of a rule; row i selects the cells that
// feed cell i. Every row must select at least one cell.
class DependencyMatrix {
 public:
  static DependencyMatrix from_rows(const std::vector<std::vector<std::uint8_t>>& rows);

  // Row-major bit decoding for chromosome genomes. A row with no selected
  // cell is repaired by selecting the diagonal, so any genome decodes to a
  // valid matrix.
  static DependencyMatrix from_bits(const std::vector<std::uint8_t>& bits, int n);

  int size() const { return n_; }
  std::uint8_t at(int i, int j) const;

  // row_mask(i) packs row i with the pack_cells convention, enabling the
  // packed binary stepper.
  std::uint64_t row_mask(int i) const { return masks_[static_cast<std::size_t>(i)]; }

 private:
  DependencyMatrix() = default;
  int n_ = 0;
  std::vector<std::uint8_t> entries_;  // row-major
  std::vector<std::uint64_t> masks_;
};

// Fuzzy step: cell i becomes min(1, sum_j T[i][j] * s[j]) — OR as bounded
// sum over AND as product.
FcaState step_fuzzy(const DependencyMatrix& T, const FcaState& s);

// On binary states the bounded sum stays in {0,1}, so a dependency matrix
// also acts as a binary automaton.
std::uint64_t step_packed(const DependencyMatrix& T, std::uint64_t state, int n);

struct NoConvergence : std::runtime_error {
  explicit NoConvergence(long max_steps)
      : std::runtime_error("no attractor cycle within " + std::to_string(max_steps) + " steps"),
        max_steps(max_steps) {}
  long max_steps;
};

// Iterates `step` from `start` until a previously seen key recurs. Returns
// the cycle's canonical key (smallest in the cycle) and the transient length,
// i.e. the number of steps before the cycle is first entered. Keys must be
// totally ordered. Throws NoConvergence when no cycle shows up in max_steps
// steps.
template <class State, class Step, class KeyOf>
auto find_attractor(State state, Step step, KeyOf key_of, long max_steps)
    -> std::pair<decltype(key_of(state)), long> {
  using Key = decltype(key_of(state));
  if (max_steps < 1) throw std::invalid_argument("find_attractor: max_steps must be >= 1");
  std::map<Key, long> seen;
  std::vector<Key> trajectory;
  for (long i = 0; i <= max_steps; ++i) {
    Key k = key_of(state);
    auto [it, fresh] = seen.emplace(k, i);
    if (!fresh) {
      const long entry = it->second;
      Key best = trajectory[static_cast<std::size_t>(entry)];
      for (long j = entry + 1; j < i; ++j) {
        if (trajectory[static_cast<std::size_t>(j)] < best) best = trajectory[static_cast<std::size_t>(j)];
      }
      return {best, entry};
    }
    trajectory.push_back(k);
    state = step(std::move(state));
  }
  throw NoConvergence(max_steps);
}

struct BinaryAttractor {
  std::uint64_t attractor = 0;  // packed canonical cycle state
  long transient = 0;
};

BinaryAttractor evolve_to_attractor(const CaRule& rule, const BinaryLattice& start, long max_steps);
BinaryAttractor evolve_to_attractor_packed(const CaRule& rule, std::uint64_t start, int n, long max_steps);
BinaryAttractor evolve_to_attractor_packed(const DependencyMatrix& T, std::uint64_t start, long max_steps);

struct FuzzyAttractor {
  std::vector<std::uint32_t> attractor;  // cells quantized to 1/Q
  long transient = 0;
};

// Fuzzy trajectories need not recur exactly; states are quantized to a grid
// of resolution 1/quantization for cycle detection, which makes the attractor
// id well defined and deterministic.
FuzzyAttractor evolve_to_attractor(const DependencyMatrix& T, const FcaState& start, long max_steps,
                                   int quantization = 256);

// Exhaustive basin map over all 2^n states of an n-cell lattice.
struct BasinPartition {
  int n = 0;
  std::vector<std::uint32_t> attractor_of;  // indexed by packed state
  std::vector<std::uint32_t> attractors;    // distinct attractor ids, ascending

  int basin_count() const { return static_cast<int>(attractors.size()); }
};

inline constexpr int kMaxEnumerationBits = 16;

BasinPartition enumerate_basins(const CaRule& rule, int n);
BasinPartition enumerate_basins(const DependencyMatrix& T);

// Routes packed binary states to their attractor id. Small lattices
// (n <= kMaxEnumerationBits) are fully enumerated up front; larger ones fall
// back to a per-state cycle search. Stateless after construction, so const
// use is safe across threads.
class AttractorIndex {
 public:
  AttractorIndex(const CaRule& rule, int n, long max_steps);
  AttractorIndex(const DependencyMatrix& T, long max_steps);

  int lattice_bits() const { return n_; }
  std::uint64_t attractor_of(std::uint64_t state) const;

 private:
  std::uint64_t successor(std::uint64_t state) const;

  int n_ = 0;
  long max_steps_ = 0;
  bool use_rule_ = true;
  CaRule rule_{};
  std::vector<std::uint64_t> masks_;  // matrix row masks when !use_rule_
  std::vector<std::uint32_t> table_;  // full map when enumerable
};

}  // namespace adhocids
