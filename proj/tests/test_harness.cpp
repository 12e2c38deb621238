#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>

#include <json.hpp>

#include "orgevo/harness.hpp"

using namespace orgevo;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ConfigError;
}

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.cases = {ExperimentCase{4, 8, 60}, ExperimentCase{5, 8, 60}};
  cfg.algorithms = {Algorithm::HGA, Algorithm::SGA1, Algorithm::SGA2};
  cfg.runs_per_case = 3;
  cfg.max_depth = 3;
  cfg.base_seed = 777;
  return cfg;
}

}  // namespace

TEST_CASE("space size multiplies out and saturates instead of overflowing") {
  CHECK(genome_space_size(2, 4) == 4);
  CHECK(genome_space_size(12, 4) == 4194304);
  CHECK(genome_space_size(3, 1) == 1);
  CHECK(genome_space_size(100, 10) == std::numeric_limits<std::uint64_t>::max());
  CHECK(kind_of([] { genome_space_size(1, 4); }) == ErrorKind::ConfigError);
}

TEST_CASE("enumeration is exhaustive, ordered, and budget-guarded") {
  GenomeEnumerator en(2, 4, 100);
  CHECK(en.total() == 4);
  std::vector<Genome> all;
  while (auto g = en.next()) all.push_back(*g);
  REQUIRE(all.size() == 4);
  CHECK(all.front() == Genome({1}, 4));
  CHECK(all.back() == Genome({4}, 4));
  CHECK(en.next() == std::nullopt);

  GenomeEnumerator three(4, 2, 100);
  std::vector<Genome> seq;
  while (auto g = three.next()) seq.push_back(*g);
  REQUIRE(seq.size() == 8);
  CHECK(seq[0] == Genome({1, 1, 1}, 2));
  CHECK(seq[1] == Genome({1, 1, 2}, 2));
  CHECK(seq[7] == Genome({2, 2, 2}, 2));

  CHECK(kind_of([] { GenomeEnumerator(12, 4, 1000); }) == ErrorKind::SpaceTooLarge);
  CHECK(kind_of([] { GenomeEnumerator(100, 10, 1ull << 40); }) == ErrorKind::SpaceTooLarge);
}

TEST_CASE("canonical counting keeps only simplify fixed points") {
  CHECK(count_canonical(2, 4, 100) == 2);
  CHECK(count_canonical(3, 2, 100) == 4);
  CHECK(count_canonical(2, 1, 100) == 1);
  CHECK(count_canonical(3, 1, 100) == 1);
  // Depth 2 leaves nothing to rewrite, deeper ranges do.
  CHECK(count_canonical(5, 2, 1000) == genome_space_size(5, 2));
  CHECK(count_canonical(5, 3, 1000) < genome_space_size(5, 3));
}

TEST_CASE("exhaustive search finds the known two-database optimum") {
  const Evaluator ev = make_ir_evaluator(EnvironmentParams{});
  const BruteForceResult r = brute_force_best(2, 4, ev, 100);
  CHECK(r.best_genome == Genome({2}, 4));
  CHECK(r.best_fitness == doctest::Approx(674.2857).epsilon(1e-6));
  CHECK(r.canonical_count == 2);
}

TEST_CASE("the stock experiment schedule pins its ten cases") {
  const auto cases = default_cases();
  REQUIRE(cases.size() == 10);
  CHECK(cases.front() == ExperimentCase{12, 50, 2000});
  CHECK(cases[3] == ExperimentCase{18, 500, 50000});
  CHECK(cases.back() == ExperimentCase{30, 1000, 200000});
}

TEST_CASE("run seeds are stable and collision-free across the grid") {
  CHECK(derive_run_seed(1, 12, Algorithm::HGA, 0) == derive_run_seed(1, 12, Algorithm::HGA, 0));
  std::vector<std::uint64_t> seen;
  for (std::size_t dbs : {12, 14, 16}) {
    for (Algorithm a : {Algorithm::HGA, Algorithm::SGA1, Algorithm::SGA2}) {
      for (std::size_t run = 0; run < 10; ++run) {
        seen.push_back(derive_run_seed(20240001, dbs, a, run));
      }
    }
  }
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("a small experiment produces complete, reproducible statistics") {
  const ExperimentConfig cfg = tiny_config();
  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(report.cases.size() == 2);
  for (const CaseReport& cr : report.cases) {
    CHECK(cr.f_best_source == "enumeration");
    REQUIRE(cr.enumeration_best.has_value());
    CHECK(cr.f_best >= cr.observed_best);
    CHECK(cr.f_best >= *cr.enumeration_best);
    REQUIRE(cr.cells.size() == 3);
    for (const CellStats& cell : cr.cells) {
      REQUIRE(cell.runs.size() == 3);
      REQUIRE(cell.apre_percent.has_value());
      CHECK(*cell.apre_percent >= 0.0);
      CHECK(cell.success_rate >= 0.0);
      CHECK(cell.success_rate <= 1.0);
      for (const RunRecord& run : cell.runs) {
        CHECK(run.best_fitness <= cr.f_best);
        CHECK(run.evaluations_used == 60);
      }
    }
  }
  // Two independent executions agree exactly.
  CHECK(run_experiment(cfg) == report);
  // Pairwise tests cover every algorithm pair once both cases define APRE.
  CHECK(report.pairwise.size() == 3);
  for (const PairwiseTest& p : report.pairwise) {
    CHECK(p.cases_used == 2);
    CHECK(p.result.p_two_sided > 0.0);
    CHECK(p.result.p_two_sided <= 1.0);
  }
}

TEST_CASE("a lone run defines the best when enumeration is off") {
  ExperimentConfig cfg = tiny_config();
  cfg.cases = {ExperimentCase{4, 8, 40}};
  cfg.algorithms = {Algorithm::HGA};
  cfg.runs_per_case = 1;
  cfg.enumeration_budget = 0;
  const ExperimentReport report = run_experiment(cfg);
  const CaseReport& cr = report.cases.front();
  CHECK(cr.f_best_source == "observed");
  CHECK_FALSE(cr.enumeration_best.has_value());
  CHECK(cr.f_best == cr.cells.front().runs.front().best_fitness);
  CHECK(*cr.cells.front().apre_percent == 0.0);
  CHECK(cr.cells.front().success_rate == 1.0);
}

TEST_CASE("stored aggregates can be rebuilt from the run records") {
  const ExperimentReport report = run_experiment(tiny_config());
  ExperimentReport scrubbed = report;
  for (CaseReport& cr : scrubbed.cases) {
    cr.f_best = -1.0;
    cr.f_best_source.clear();
    cr.observed_best = -1.0;
    for (CellStats& cell : cr.cells) {
      cell.apre_percent.reset();
      cell.success_rate = -1.0;
    }
  }
  scrubbed.pairwise.clear();
  recompute_report_stats(scrubbed);
  CHECK(scrubbed == report);
}

TEST_CASE("an infeasible environment yields a zero best without dividing by it") {
  ExperimentConfig cfg = tiny_config();
  cfg.cases = {ExperimentCase{4, 8, 40}};
  cfg.env.query_rate = 50.0;  // beyond every service rate: nothing is feasible
  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(report.cases.size() == 1);
  const CaseReport& cr = report.cases.front();
  CHECK(cr.f_best == 0.0);
  for (const CellStats& cell : cr.cells) {
    CHECK_FALSE(cell.apre_percent.has_value());
    CHECK(cell.success_rate == 1.0);  // every run trivially reaches a zero optimum
  }
  CHECK(report.pairwise.empty());
}

TEST_CASE("reports round-trip through JSON byte for byte") {
  const ExperimentReport report = run_experiment(tiny_config());
  const std::string text = report_to_json(report);
  const char* path = "harness_roundtrip_test.json";
  write_report(report, ReportFormat::Json, path);
  const ExperimentReport back = read_report(path);
  std::remove(path);
  CHECK(back == report);
  CHECK(report_to_json(back) == text);
  CHECK(kind_of([] { read_report("no_such_dir/none.json"); }) == ErrorKind::IoError);
}

TEST_CASE("the CSV view lists one row per case and algorithm") {
  const ExperimentReport report = run_experiment(tiny_config());
  const std::string csv = report_to_csv(report);
  std::size_t lines = 0;
  for (char c : csv) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == 1 + 2 * 3);
  CHECK(csv.rfind("case,algorithm,apre_percent,sr,f_best,runs\n", 0) == 0);
}

TEST_CASE("trees round-trip through their JSON form") {
  const OrganizationTree t = decode(Genome({2, 2, 3, 1, 2, 3}, 3));
  const std::string text = tree_to_json(t);
  CHECK(tree_from_json(text) == t);
  CHECK(kind_of([] { tree_from_json("{"); }) == ErrorKind::MalformedTree);
  CHECK(kind_of([] { tree_from_json("{\"roots\": 3}"); }) == ErrorKind::MalformedTree);
  CHECK(kind_of([] {
          tree_from_json("{\"roots\":[{\"role\":\"boss\",\"children\":[]}]}");
        }) == ErrorKind::MalformedTree);
}

TEST_CASE("single-run results serialize with their configuration") {
  GAConfig cfg;
  cfg.leaf_count = 6;
  cfg.max_depth = 3;
  cfg.algorithm = Algorithm::HGA;
  cfg.population_size = 8;
  cfg.max_evaluations = 100;
  cfg.seed = 99;
  const RunResult res = run(cfg, make_ir_evaluator(EnvironmentParams{}));
  const nlohmann::json j = nlohmann::json::parse(run_result_to_json(cfg, res));
  CHECK(j.at("config").at("dbs").get<int>() == 6);
  CHECK(j.at("config").at("algo").get<std::string>() == "hga");
  CHECK(j.at("best_fitness").get<double>() == res.best_fitness);
  CHECK(j.at("evaluations_used").get<long long>() == 100);
  CHECK(j.at("trajectory").is_array());
  CHECK(parse_genome(j.at("best_genome").get<std::string>(), 3) == res.best_genome);
}

TEST_CASE("experiment configurations parse from JSON with defaults") {
  const ExperimentConfig parsed = experiment_config_from_json(R"({
    "cases": [{"dbs": 6, "pop": 20, "evals": 400}],
    "algorithms": ["hga", "sga1"],
    "runs_per_case": 4,
    "max_depth": 3,
    "mutation_rate": 0.2,
    "rts_window": 4,
    "base_seed": 12,
    "env": {"message_latency_ms": 25.0, "query_rate": 2.0}
  })");
  REQUIRE(parsed.cases.size() == 1);
  CHECK(parsed.cases[0] == ExperimentCase{6, 20, 400});
  CHECK(parsed.algorithms == std::vector<Algorithm>{Algorithm::HGA, Algorithm::SGA1});
  CHECK(parsed.runs_per_case == 4);
  CHECK(parsed.max_depth == 3);
  CHECK(parsed.mutation_rate == 0.2);
  CHECK(parsed.rts_window == 4);
  CHECK(parsed.base_seed == 12);
  CHECK(parsed.env.message_latency == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(parsed.env.query_rate == 2.0);
  CHECK(parsed.env.process_service_rate == 10.0);

  const ExperimentConfig defaults = experiment_config_from_json("{}");
  CHECK(defaults.cases == default_cases());
  CHECK(defaults.runs_per_case == 10);
  CHECK(defaults.max_depth == 4);

  CHECK(kind_of([] { experiment_config_from_json("{\"workers\": 3}"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { experiment_config_from_json("{\"algorithms\": [\"ppo\"]}"); }) ==
        ErrorKind::ConfigError);
  CHECK(kind_of([] { experiment_config_from_json("not json"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { experiment_config_from_json("{\"cases\": [{\"pop\": 3}]}"); }) ==
        ErrorKind::ConfigError);
}
