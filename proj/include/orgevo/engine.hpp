#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orgevo/fitness.hpp"
#include "orgevo/genome.hpp"
#include "orgevo/rng.hpp"

namespace orgevo {

enum class Algorithm { HGA, SGA1, SGA2 };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct GAConfig {
  std::size_t leaf_count = 2;
  int max_depth = 1;
  Algorithm algorithm = Algorithm::HGA;
  std::size_t population_size = 50;
  long long max_evaluations = 2000;
  double mutation_rate = 0.1;
  std::size_t rts_window = 5;
  std::uint64_t seed = 0;

  bool operator==(const GAConfig& other) const = default;
};

void validate_config(const GAConfig& cfg);

// Population members keep the genome exactly as produced by variation; the
// fitness is the evaluator's score for its simplified form.
struct Individual {
  Genome genome;
  double fitness = 0.0;

  bool operator==(const Individual& other) const = default;
};

struct TrajectoryPoint {
  long long evaluation = 0;
  double fitness = 0.0;

  bool operator==(const TrajectoryPoint& other) const = default;
};

struct RunResult {
  Genome best_genome;
  double best_fitness = 0.0;
  long long evaluations_used = 0;
  // One point per strict improvement of the best-so-far, first evaluation
  // included; therefore strictly increasing in fitness.
  std::vector<TrajectoryPoint> best_fitness_trajectory;
  std::uint64_t seed = 0;

  bool operator==(const RunResult& other) const = default;
};

// Random genomes plus their fitness; every evaluation counts toward the
// caller's budget accounting.
std::vector<Individual> init_population(const GAConfig& cfg, const Evaluator& evaluator, Rng& rng);

// Restricted tournament replacement: samples `window` members without
// replacement, finds the one closest to the offspring by digit distance
// (first drawn wins ties), and replaces it only on strict fitness
// improvement. Returns whether a replacement happened.
bool rts_replace(std::vector<Individual>& population, const Individual& offspring,
                 std::size_t window, Rng& rng);

// Steady-state loop: initialize, then repeat (two uniform parents, one
// crossover, mutation on both offspring, evaluate, niche-replace) until the
// evaluation budget is exactly consumed. Deterministic given cfg.seed and
// the evaluator.
RunResult run(const GAConfig& cfg, const Evaluator& evaluator);

}  // namespace orgevo
