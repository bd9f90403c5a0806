#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adhocids/ca.hpp"
#include "adhocids/pattern.hpp"
#include "adhocids/rng.hpp"

namespace adhocids {

// Two chromosome encodings: an 8-bit elementary rule table, or the row-major
// n*n bits of a dependency matrix.
enum class RuleEncoding { ElementaryRule, Matrix };

struct Chromosome {
  std::vector<std::uint8_t> genome;  // bits
  std::optional<double> fitness;
};

struct GaConfig {
  int population_size = 40;
  int generations = 50;
  double mutation_rate = 0.02;
  double elite_fraction = 0.1;
  double cull_fraction = 0.3;
  std::uint64_t seed = 1;

  bool operator==(const GaConfig&) const = default;
};

// Throws std::invalid_argument naming the violated field.
void validate(const GaConfig& cfg);

std::size_t genome_length(RuleEncoding encoding, int lattice_bits);

CaRule decode_rule(const Chromosome& c);
DependencyMatrix decode_matrix(const Chromosome& c, int lattice_bits);
AttractorIndex decode_attractors(const Chromosome& c, RuleEncoding encoding, int lattice_bits,
                                 long max_steps);

inline constexpr long kDefaultAttractorSteps = 4096;

// Class-separation quality of the basin distribution the chromosome's CA
// induces on the training set: the relevance index, in [0, 1].
double fitness(const Chromosome& c, RuleEncoding encoding, int lattice_bits,
               const std::vector<PatternVector>& train,
               long max_steps = kDefaultAttractorSteps);

// Single-point crossover; the cut is drawn uniformly from [1, len-1].
Chromosome crossover(const Chromosome& a, const Chromosome& b, Rng& rng);
Chromosome crossover(const Chromosome& a, const Chromosome& b, std::uint64_t seed);

// Independent per-bit flips with probability rate.
Chromosome mutate(const Chromosome& c, double rate, Rng& rng);
Chromosome mutate(const Chromosome& c, double rate, std::uint64_t seed);

struct EvolveResult {
  Chromosome best;
  std::vector<double> history;         // best fitness after init and per generation
  std::vector<Chromosome> population;  // final generation, evaluated, best first
};

// Per generation: rank by fitness, keep the elites unchanged, drop the bottom
// cull fraction, and refill the dropped slots with mutated crossover children
// of fitness-proportionally selected survivors. Best fitness never decreases.
EvolveResult evolve(const GaConfig& cfg, RuleEncoding encoding, int lattice_bits,
                    const std::vector<PatternVector>& train,
                    long max_steps = kDefaultAttractorSteps);

}  // namespace adhocids
