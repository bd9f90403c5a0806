#include "adhocids/ca.hpp"

#include <algorithm>
#include <cmath>

namespace adhocids {

CaRule CaRule::from_number(int rule_number) {
  if (rule_number < 0 || rule_number > 255) {
    throw std::invalid_argument("rule number must be in [0, 255]");
  }
  CaRule r;
  r.rule_number = rule_number;
  for (int k = 0; k < 8; ++k) {
    r.table[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((rule_number >> k) & 1);
  }
  return r;
}

BinaryLattice step_binary(const CaRule& rule, const BinaryLattice& lat) {
  const auto n = lat.cells.size();
  BinaryLattice out;
  out.cells.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t left = i > 0 ? lat.cells[i - 1] : 0;
    const std::uint8_t self = lat.cells[i];
    const std::uint8_t right = i + 1 < n ? lat.cells[i + 1] : 0;
    out.cells[i] = rule.next(left, self, right);
  }
  return out;
}

std::uint64_t pack_cells(const std::vector<std::uint8_t>& cells) {
  if (cells.size() > 64) throw std::invalid_argument("pack_cells: lattice longer than 64 cells");
  std::uint64_t s = 0;
  for (std::uint8_t c : cells) s = (s << 1) | (c & 1u);
  return s;
}

std::vector<std::uint8_t> unpack_cells(std::uint64_t state, int n) {
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cells[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((state >> (n - 1 - i)) & 1u);
  }
  return cells;
}

std::string cells_to_string(std::uint64_t state, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((state >> (n - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::uint64_t cells_from_string(const std::string& bits) {
  if (bits.empty() || bits.size() > 64) {
    throw std::invalid_argument("bit string length must be in [1, 64]");
  }
  std::uint64_t s = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may contain only 0 and 1");
    s = (s << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return s;
}

std::uint64_t step_packed(const CaRule& rule, std::uint64_t state, int n) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t left = i > 0 ? (state >> (n - i)) & 1u : 0;
    const std::uint64_t self = (state >> (n - 1 - i)) & 1u;
    const std::uint64_t right = i + 1 < n ? (state >> (n - 2 - i)) & 1u : 0;
    const std::uint64_t bit = rule.table[static_cast<std::size_t>((left << 2) | (self << 1) | right)];
    out |= bit << (n - 1 - i);
  }
  return out;
}

DependencyMatrix DependencyMatrix::from_rows(const std::vector<std::vector<std::uint8_t>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw std::invalid_argument("dependency matrix must have at least one row");
  if (n > 64) throw std::invalid_argument("dependency matrix larger than 64x64");
  DependencyMatrix m;
  m.n_ = n;
  m.entries_.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("dependency matrix must be square");
    }
    bool any = false;
    for (std::uint8_t v : row) {
      if (v > 1) throw std::invalid_argument("dependency matrix entries must be 0 or 1");
      any = any || v == 1;
      m.entries_.push_back(v);
    }
    if (!any) throw std::invalid_argument("dependency matrix row has no nonzero entry");
  }
  m.masks_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::uint64_t mask = 0;
    for (int j = 0; j < n; ++j) mask = (mask << 1) | m.entries_[static_cast<std::size_t>(i * n + j)];
    m.masks_[static_cast<std::size_t>(i)] = mask;
  }
  return m;
}

DependencyMatrix DependencyMatrix::from_bits(const std::vector<std::uint8_t>& bits, int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("dependency matrix size must be in [1, 64]");
  if (bits.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("dependency matrix bit count must be n*n");
  }
  std::vector<std::vector<std::uint8_t>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    row.assign(bits.begin() + static_cast<std::ptrdiff_t>(i) * n,
               bits.begin() + static_cast<std::ptrdiff_t>(i + 1) * n);
    if (std::find(row.begin(), row.end(), std::uint8_t{1}) == row.end()) {
      row[static_cast<std::size_t>(i)] = 1;
    }
  }
  return from_rows(rows);
}

std::uint8_t DependencyMatrix::at(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("dependency matrix index");
  return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
}

FcaState step_fuzzy(const DependencyMatrix& T, const FcaState& s) {
  const int n = T.size();
  if (static_cast<int>(s.cells.size()) != n) {
    throw std::invalid_argument("step_fuzzy: state length does not match matrix size");
  }
  FcaState out;
  out.cells.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      if (T.at(i, j)) acc += s.cells[static_cast<std::size_t>(j)];
    }
    out.cells[static_cast<std::size_t>(i)] = std::min(1.0, acc);
  }
  return out;
}

std::uint64_t step_packed(const DependencyMatrix& T, std::uint64_t state, int n) {
  if (n != T.size()) throw std::invalid_argument("step_packed: state width does not match matrix size");
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = (state & T.row_mask(i)) != 0 ? 1u : 0u;
    out |= bit << (n - 1 - i);
  }
  return out;
}

BinaryAttractor evolve_to_attractor(const CaRule& rule, const BinaryLattice& start, long max_steps) {
  return evolve_to_attractor_packed(rule, pack_cells(start.cells),
                                    static_cast<int>(start.cells.size()), max_steps);
}

BinaryAttractor evolve_to_attractor_packed(const CaRule& rule, std::uint64_t start, int n, long max_steps) {
  auto [attractor, transient] = find_attractor(
      start, [&](std::uint64_t s) { return step_packed(rule, s, n); },
      [](std::uint64_t s) { return s; }, max_steps);
  return {attractor, transient};
}

BinaryAttractor evolve_to_attractor_packed(const DependencyMatrix& T, std::uint64_t start, long max_steps) {
  const int n = T.size();
  auto [attractor, transient] = find_attractor(
      start, [&](std::uint64_t s) { return step_packed(T, s, n); },
      [](std::uint64_t s) { return s; }, max_steps);
  return {attractor, transient};
}

FuzzyAttractor evolve_to_attractor(const DependencyMatrix& T, const FcaState& start, long max_steps,
                                   int quantization) {
  if (quantization < 1) throw std::invalid_argument("quantization must be >= 1");
  const double q = static_cast<double>(quantization);
  auto quantize = [q](const FcaState& s) {
    std::vector<std::uint32_t> key(s.cells.size());
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
      key[i] = static_cast<std::uint32_t>(std::lround(s.cells[i] * q));
    }
    return key;
  };
  auto [attractor, transient] = find_attractor(
      start, [&](FcaState s) { return step_fuzzy(T, s); }, quantize, max_steps);
  return {attractor, transient};
}

namespace {

// Terminal-cycle labelling of the successor graph: walk each unresolved state
// until a resolved state or an in-walk repeat, label the discovered cycle by
// its smallest member, then sweep the labels back along the walk.
BasinPartition label_basins(int n, const std::vector<std::uint32_t>& successor) {
  constexpr std::uint32_t kUnset = 0xffffffffu;
  const std::size_t total = std::size_t{1} << n;
  BasinPartition part;
  part.n = n;
  part.attractor_of.assign(total, kUnset);

  std::vector<std::uint32_t> walk;
  std::vector<long> position(total, -1);
  for (std::uint32_t s0 = 0; s0 < total; ++s0) {
    if (part.attractor_of[s0] != kUnset) continue;
    walk.clear();
    std::uint32_t cur = s0;
    std::uint32_t label = kUnset;
    while (true) {
      if (part.attractor_of[cur] != kUnset) {
        label = part.attractor_of[cur];
        break;
      }
      if (position[cur] != -1) {
        label = cur;
        for (std::size_t i = static_cast<std::size_t>(position[cur]); i < walk.size(); ++i) {
          label = std::min(label, walk[i]);
        }
        break;
      }
      position[cur] = static_cast<long>(walk.size());
      walk.push_back(cur);
      cur = successor[cur];
    }
    for (std::uint32_t s : walk) {
      part.attractor_of[s] = label;
      position[s] = -1;
    }
  }

  part.attractors.assign(part.attractor_of.begin(), part.attractor_of.end());
  std::sort(part.attractors.begin(), part.attractors.end());
  part.attractors.erase(std::unique(part.attractors.begin(), part.attractors.end()),
                        part.attractors.end());
  return part;
}

}  // namespace

BasinPartition enumerate_basins(const CaRule& rule, int n) {
  if (n < 1 || n > kMaxEnumerationBits) {
    throw std::invalid_argument("enumerate_basins: lattice size must be in [1, 16]");
  }
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::uint32_t> successor(total);
  for (std::uint32_t s = 0; s < total; ++s) {
    successor[s] = static_cast<std::uint32_t>(step_packed(rule, s, n));
  }
  return label_basins(n, successor);
}

BasinPartition enumerate_basins(const DependencyMatrix& T) {
  const int n = T.size();
  if (n > kMaxEnumerationBits) {
    throw std::invalid_argument("enumerate_basins: lattice size must be in [1, 16]");
  }
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::uint32_t> successor(total);
  for (std::uint32_t s = 0; s < total; ++s) {
    successor[s] = static_cast<std::uint32_t>(step_packed(T, s, n));
  }
  return label_basins(n, successor);
}

AttractorIndex::AttractorIndex(const CaRule& rule, int n, long max_steps)
    : n_(n), max_steps_(max_steps), use_rule_(true), rule_(rule) {
  if (n < 1 || n > 64) throw std::invalid_argument("attractor index: lattice size must be in [1, 64]");
  if (n <= kMaxEnumerationBits) {
    table_ = enumerate_basins(rule, n).attractor_of;
  }
}

AttractorIndex::AttractorIndex(const DependencyMatrix& T, long max_steps)
    : n_(T.size()), max_steps_(max_steps), use_rule_(false) {
  masks_.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) masks_[static_cast<std::size_t>(i)] = T.row_mask(i);
  if (n_ <= kMaxEnumerationBits) {
    table_ = enumerate_basins(T).attractor_of;
  }
}

std::uint64_t AttractorIndex::successor(std::uint64_t state) const {
  if (use_rule_) return step_packed(rule_, state, n_);
  std::uint64_t out = 0;
  for (int i = 0; i < n_; ++i) {
    const std::uint64_t bit = (state & masks_[static_cast<std::size_t>(i)]) != 0 ? 1u : 0u;
    out |= bit << (n_ - 1 - i);
  }
  return out;
}

std::uint64_t AttractorIndex::attractor_of(std::uint64_t state) const {
  if (!table_.empty()) return table_[state];
  auto [attractor, transient] = find_attractor(
      state, [&](std::uint64_t s) { return successor(s); },
      [](std::uint64_t s) { return s; }, max_steps_);
  (void)transient;
  return attractor;
}

}  // namespace adhocids
