#include "orgevo/engine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>

#include "orgevo/operators.hpp"

namespace orgevo {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::HGA: return "hga";
    case Algorithm::SGA1: return "sga1";
    case Algorithm::SGA2: return "sga2";
  }
  return "hga";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "hga") return Algorithm::HGA;
  if (name == "sga1") return Algorithm::SGA1;
  if (name == "sga2") return Algorithm::SGA2;
  throw Error(ErrorKind::ConfigError, "unknown algorithm '" + name + "' (expected hga, sga1 or sga2)");
}

void validate_config(const GAConfig& cfg) {
  if (cfg.leaf_count < 2) {
    throw Error(ErrorKind::ConfigError, "need at least two databases");
  }
  if (cfg.max_depth < 1) {
    throw Error(ErrorKind::ConfigError, "maximum depth must be at least 1");
  }
  if (cfg.population_size < 2) {
    throw Error(ErrorKind::ConfigError, "population must hold at least two members");
  }
  if (cfg.max_evaluations < static_cast<long long>(cfg.population_size)) {
    throw Error(ErrorKind::ConfigError, "evaluation budget cannot be below the population size");
  }
  if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0)) {
    throw Error(ErrorKind::ConfigError, "mutation rate must lie in [0, 1]");
  }
  if (cfg.rts_window < 1 || cfg.rts_window > cfg.population_size) {
    throw Error(ErrorKind::WindowTooLarge, "replacement window must lie in [1, population size]");
  }
}

std::vector<Individual> init_population(const GAConfig& cfg, const Evaluator& evaluator, Rng& rng) {
  validate_config(cfg);
  std::vector<Individual> pop;
  pop.reserve(cfg.population_size);
  for (std::size_t i = 0; i < cfg.population_size; ++i) {
    Genome g = random_genome(cfg.leaf_count, cfg.max_depth, rng);
    const double f = evaluator(decode(simplify(g)));
    pop.push_back(Individual{std::move(g), f});
  }
  return pop;
}

bool rts_replace(std::vector<Individual>& population, const Individual& offspring,
                 std::size_t window, Rng& rng) {
  if (window < 1 || window > population.size()) {
    throw Error(ErrorKind::WindowTooLarge, "replacement window must lie in [1, population size]");
  }
  std::vector<std::size_t> idx(population.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates; the first `window` entries are the sample in draw
  // order, which is also the tie-break order.
  std::size_t victim = population.size();
  std::size_t best_dist = std::numeric_limits<std::size_t>::max();
  for (std::size_t t = 0; t < window; ++t) {
    const std::size_t pick = static_cast<std::size_t>(
        rng.uniform_int(static_cast<int>(t), static_cast<int>(population.size()) - 1));
    std::swap(idx[t], idx[pick]);
    const std::size_t d = genome_distance(offspring.genome, population[idx[t]].genome);
    if (d < best_dist) {
      best_dist = d;
      victim = idx[t];
    }
  }
  if (offspring.fitness > population[victim].fitness) {
    population[victim] = offspring;
    return true;
  }
  return false;
}

namespace {

std::pair<Genome, Genome> cross(Algorithm algo, const Genome& a, const Genome& b, Rng& rng) {
  switch (algo) {
    case Algorithm::HGA:
      return hierarchical_crossover(a, b, rng);
    case Algorithm::SGA1:
      if (a.digits().size() < 2) return {a, b};  // nothing to cut between
      return one_point_crossover(a, b, rng);
    case Algorithm::SGA2:
      if (a.digits().size() < 2) return {a, b};
      return two_point_crossover(a, b, rng);
  }
  return {a, b};
}

Genome mutate(Algorithm algo, const Genome& g, double pm, Rng& rng) {
  if (algo == Algorithm::HGA) return small_perturbation_mutation(g, pm, rng);
  return bitwise_mutation(g, pm, rng);
}

}  // namespace

RunResult run(const GAConfig& cfg, const Evaluator& evaluator) {
  validate_config(cfg);
  Rng rng(cfg.seed);

  long long evals = 0;
  std::optional<RunResult> result;
  auto score = [&](const Genome& g) {
    const double f = evaluator(decode(simplify(g)));
    ++evals;
    if (!result || f > result->best_fitness) {
      if (!result) {
        result = RunResult{g, f, 0, {}, cfg.seed};
      } else {
        result->best_genome = g;
        result->best_fitness = f;
      }
      result->best_fitness_trajectory.push_back(TrajectoryPoint{evals, f});
    }
    return f;
  };

  std::vector<Individual> pop;
  pop.reserve(cfg.population_size);
  for (std::size_t i = 0; i < cfg.population_size; ++i) {
    Genome g = random_genome(cfg.leaf_count, cfg.max_depth, rng);
    const double f = score(g);
    pop.push_back(Individual{std::move(g), f});
  }

  const int last = static_cast<int>(cfg.population_size) - 1;
  while (evals < cfg.max_evaluations) {
    const std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, last));
    const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, last));
    auto offspring = cross(cfg.algorithm, pop[i].genome, pop[j].genome, rng);
    offspring.first = mutate(cfg.algorithm, offspring.first, cfg.mutation_rate, rng);
    offspring.second = mutate(cfg.algorithm, offspring.second, cfg.mutation_rate, rng);
    for (Genome* g : {&offspring.first, &offspring.second}) {
      if (evals >= cfg.max_evaluations) break;
      const double f = score(*g);
      rts_replace(pop, Individual{std::move(*g), f}, cfg.rts_window, rng);
    }
  }

  result->evaluations_used = evals;
  return *std::move(result);
}

}  // namespace orgevo
