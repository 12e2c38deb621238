#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orgevo/engine.hpp"
#include "orgevo/fitness.hpp"
#include "orgevo/genome.hpp"
#include "orgevo/metrics.hpp"

namespace orgevo {

// Number of genomes in the (leaf_count, max_depth) space, i.e.
// max_depth^(leaf_count-1); saturates at UINT64_MAX on overflow.
std::uint64_t genome_space_size(std::size_t leaf_count, int max_depth);

constexpr std::uint64_t kDefaultEnumerationBudget = 1ull << 26;

// Streams every genome of the space in lexicographic digit order. Refuses
// spaces larger than the budget up front.
class GenomeEnumerator {
 public:
  GenomeEnumerator(std::size_t leaf_count, int max_depth,
                   std::uint64_t budget = kDefaultEnumerationBudget);

  std::uint64_t total() const { return total_; }

  // Next genome, or nullopt once the space is exhausted.
  std::optional<Genome> next();

 private:
  std::size_t leaf_count_;
  int max_depth_;
  std::uint64_t total_;
  std::uint64_t produced_ = 0;
  std::vector<int> digits_;
};

// Number of distinct simplified forms in the space; these are exactly the
// structures whose aggregators all have two or more subordinates.
std::uint64_t count_canonical(std::size_t leaf_count, int max_depth,
                              std::uint64_t budget = kDefaultEnumerationBudget);

struct BruteForceResult {
  Genome best_genome;
  double best_fitness = 0.0;
  std::uint64_t canonical_count = 0;
};

// Evaluates every canonical genome once; ties go to the lexicographically
// smallest genome.
BruteForceResult brute_force_best(std::size_t leaf_count, int max_depth, const Evaluator& evaluator,
                                  std::uint64_t budget = kDefaultEnumerationBudget);

struct ExperimentCase {
  std::size_t leaf_count = 12;
  std::size_t population_size = 50;
  long long max_evaluations = 2000;

  bool operator==(const ExperimentCase& other) const = default;
};

// The benchmark schedule: database counts 12..30 with population sizes and
// budgets that grow with the space.
std::vector<ExperimentCase> default_cases();

struct ExperimentConfig {
  std::vector<ExperimentCase> cases = default_cases();
  std::vector<Algorithm> algorithms = {Algorithm::HGA, Algorithm::SGA1, Algorithm::SGA2};
  std::size_t runs_per_case = 10;
  int max_depth = 4;
  double mutation_rate = 0.1;
  std::size_t rts_window = 5;
  std::uint64_t base_seed = 20240001;
  EnvironmentParams env;
  // Per-case exhaustive oracle is computed only when the space fits here.
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;

  bool operator==(const ExperimentConfig& other) const = default;
};

// Run seeds derive from the base seed and the (case, algorithm, run) triple
// through a platform-stable mix, so any cell can be reproduced in isolation.
std::uint64_t derive_run_seed(std::uint64_t base_seed, std::size_t leaf_count, Algorithm algo,
                              std::size_t run_index);

struct RunRecord {
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  std::string best_genome;  // text form
  long long evaluations_used = 0;
  std::vector<TrajectoryPoint> trajectory;

  bool operator==(const RunRecord& other) const = default;
};

struct CellStats {
  Algorithm algorithm = Algorithm::HGA;
  std::vector<RunRecord> runs;
  // Absent when the case's best-known fitness is not positive (PRE needs a
  // positive reference).
  std::optional<double> apre_percent;
  double success_rate = 0.0;

  bool operator==(const CellStats& other) const = default;
};

struct CaseReport {
  ExperimentCase config;
  double f_best = 0.0;
  std::string f_best_source;  // "enumeration" or "observed"
  double observed_best = 0.0;
  std::optional<double> enumeration_best;
  std::optional<std::string> enumeration_best_genome;
  std::vector<CellStats> cells;

  bool operator==(const CaseReport& other) const = default;
};

struct PairwiseTest {
  Algorithm a = Algorithm::HGA;
  Algorithm b = Algorithm::HGA;
  WilcoxonResult result;
  std::size_t cases_used = 0;

  bool operator==(const PairwiseTest& other) const = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CaseReport> cases;
  // One entry per algorithm pair, over the per-case APRE vectors restricted
  // to cases where both sides have a defined APRE; present only when at
  // least two such cases exist.
  std::vector<PairwiseTest> pairwise;

  bool operator==(const ExperimentReport& other) const = default;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Rebuilds f_best, per-cell APRE and success rate, and the pairwise tests
// from the stored per-run records, discarding whatever aggregates the report
// carried. Lets stored reports be re-summarized after the fact.
void recompute_report_stats(ExperimentReport& report);

enum class ReportFormat { Json, Csv };

// JSON carries the full report and reads back exactly; CSV is the flat
// case-by-algorithm summary (case,algorithm,apre_percent,sr,f_best,runs).
void write_report(const ExperimentReport& report, ReportFormat format, const std::string& path);
std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);
ExperimentReport read_report(const std::string& path);

// Nested {role, children} tree form used by the encode/decode subcommands.
std::string tree_to_json(const OrganizationTree& t);
OrganizationTree tree_from_json(const std::string& text);

std::string run_result_to_json(const GAConfig& cfg, const RunResult& result);

ExperimentConfig experiment_config_from_json(const std::string& text);

}  // namespace orgevo
