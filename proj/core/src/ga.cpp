#include "adhocids/ga.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adhocids {

void validate(const GaConfig& cfg) {
  if (cfg.population_size < 2) throw std::invalid_argument("ga: population_size must be >= 2");
  if (cfg.generations < 0) throw std::invalid_argument("ga: generations must be >= 0");
  if (cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0) {
    throw std::invalid_argument("ga: mutation_rate must be in [0, 1]");
  }
  if (cfg.elite_fraction <= 0.0 || cfg.elite_fraction >= 1.0) {
    throw std::invalid_argument("ga: elite_fraction must be in (0, 1)");
  }
  if (cfg.cull_fraction <= 0.0 || cfg.cull_fraction >= 1.0) {
    throw std::invalid_argument("ga: cull_fraction must be in (0, 1)");
  }
  if (cfg.elite_fraction + cfg.cull_fraction > 1.0) {
    throw std::invalid_argument("ga: elite_fraction + cull_fraction must be <= 1");
  }
}

std::size_t genome_length(RuleEncoding encoding, int lattice_bits) {
  if (lattice_bits < 1 || lattice_bits > 64) {
    throw std::invalid_argument("ga: lattice_bits must be in [1, 64]");
  }
  switch (encoding) {
    case RuleEncoding::ElementaryRule:
      return 8;
    case RuleEncoding::Matrix:
      return static_cast<std::size_t>(lattice_bits) * static_cast<std::size_t>(lattice_bits);
  }
  return 8;
}

CaRule decode_rule(const Chromosome& c) {
  if (c.genome.size() != 8) throw std::invalid_argument("decode_rule: genome must hold 8 bits");
  int number = 0;
  for (int k = 0; k < 8; ++k) number |= (c.genome[static_cast<std::size_t>(k)] & 1) << k;
  return CaRule::from_number(number);
}

DependencyMatrix decode_matrix(const Chromosome& c, int lattice_bits) {
  return DependencyMatrix::from_bits(c.genome, lattice_bits);
}

AttractorIndex decode_attractors(const Chromosome& c, RuleEncoding encoding, int lattice_bits,
                                 long max_steps) {
  if (encoding == RuleEncoding::ElementaryRule) {
    return AttractorIndex(decode_rule(c), lattice_bits, max_steps);
  }
  return AttractorIndex(decode_matrix(c, lattice_bits), max_steps);
}

double fitness(const Chromosome& c, RuleEncoding encoding, int lattice_bits,
               const std::vector<PatternVector>& train, long max_steps) {
  if (train.empty()) throw std::invalid_argument("fitness: empty training set");
  const int classes = max_label(train) + 1;
  const AttractorIndex index = decode_attractors(c, encoding, lattice_bits, max_steps);
  return relevance_index(induce_distribution(index, train, classes));
}

Chromosome crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
  if (a.genome.size() != b.genome.size()) {
    throw std::invalid_argument("crossover: genome length mismatch");
  }
  const std::size_t len = a.genome.size();
  if (len < 2) throw std::invalid_argument("crossover: genome too short");
  const std::size_t cut = 1 + static_cast<std::size_t>(uniform_index(rng, len - 1));
  Chromosome child;
  child.genome.assign(a.genome.begin(), a.genome.begin() + static_cast<std::ptrdiff_t>(cut));
  child.genome.insert(child.genome.end(), b.genome.begin() + static_cast<std::ptrdiff_t>(cut),
                      b.genome.end());
  return child;
}

Chromosome crossover(const Chromosome& a, const Chromosome& b, std::uint64_t seed) {
  Rng rng(seed);
  return crossover(a, b, rng);
}

Chromosome mutate(const Chromosome& c, double rate, Rng& rng) {
  if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutate: rate must be in [0, 1]");
  Chromosome out;
  out.genome = c.genome;
  for (auto& bit : out.genome) {
    if (uniform_double(rng) < rate) bit ^= 1;
  }
  return out;
}

Chromosome mutate(const Chromosome& c, double rate, std::uint64_t seed) {
  Rng rng(seed);
  return mutate(c, rate, rng);
}

namespace {

// Fitness descending, genome ascending: a total, deterministic order.
bool ranks_before(const Chromosome& a, const Chromosome& b) {
  if (*a.fitness != *b.fitness) return *a.fitness > *b.fitness;
  return a.genome < b.genome;
}

// Fitness-proportional pick; uniform when all weights are zero.
const Chromosome& roulette(const std::vector<Chromosome>& pool, double total, Rng& rng) {
  if (total <= 0.0) {
    return pool[static_cast<std::size_t>(uniform_index(rng, pool.size()))];
  }
  double r = uniform_double(rng) * total;
  for (const auto& c : pool) {
    r -= *c.fitness;
    if (r <= 0.0) return c;
  }
  return pool.back();
}

}  // namespace

EvolveResult evolve(const GaConfig& cfg, RuleEncoding encoding, int lattice_bits,
                    const std::vector<PatternVector>& train, long max_steps) {
  validate(cfg);
  if (train.empty()) throw std::invalid_argument("evolve: empty training set");

  const std::size_t len = genome_length(encoding, lattice_bits);
  const std::size_t pop_size = static_cast<std::size_t>(cfg.population_size);
  Rng rng(cfg.seed);

  auto evaluate = [&](Chromosome& c) {
    if (!c.fitness) c.fitness = fitness(c, encoding, lattice_bits, train, max_steps);
  };

  std::vector<Chromosome> population(pop_size);
  for (auto& c : population) {
    c.genome.resize(len);
    for (auto& bit : c.genome) bit = uniform_bit(rng);
    evaluate(c);
  }
  std::sort(population.begin(), population.end(), ranks_before);

  EvolveResult result;
  result.history.push_back(*population.front().fitness);

  const std::size_t elite_count =
      std::max<std::size_t>(1, static_cast<std::size_t>(cfg.elite_fraction * static_cast<double>(pop_size)));
  const std::size_t cull_count =
      std::min(pop_size - elite_count,
               static_cast<std::size_t>(cfg.cull_fraction * static_cast<double>(pop_size)));

  for (int gen = 0; gen < cfg.generations; ++gen) {
    const std::vector<Chromosome> survivors(
        population.begin(), population.end() - static_cast<std::ptrdiff_t>(cull_count));
    double total = 0.0;
    for (const auto& c : survivors) total += *c.fitness;

    std::vector<Chromosome> next = survivors;
    for (std::size_t i = 0; i < cull_count; ++i) {
      const Chromosome& p1 = roulette(survivors, total, rng);
      const Chromosome& p2 = roulette(survivors, total, rng);
      Chromosome child = mutate(crossover(p1, p2, rng), cfg.mutation_rate, rng);
      evaluate(child);
      next.push_back(std::move(child));
    }

    population = std::move(next);
    std::sort(population.begin(), population.end(), ranks_before);
    result.history.push_back(*population.front().fitness);
  }

  result.best = population.front();
  result.population = std::move(population);
  return result;
}

}  // namespace adhocids
