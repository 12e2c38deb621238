#include "orgevo/harness.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace orgevo {

using nlohmann::json;

std::uint64_t genome_space_size(std::size_t leaf_count, int max_depth) {
  if (leaf_count < 2) {
    throw Error(ErrorKind::ConfigError, "need at least two databases");
  }
  if (max_depth < 1) {
    throw Error(ErrorKind::ConfigError, "maximum depth must be at least 1");
  }
  const std::uint64_t m = static_cast<std::uint64_t>(max_depth);
  std::uint64_t size = 1;
  for (std::size_t i = 1; i < leaf_count; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / m) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    size *= m;
  }
  return size;
}

GenomeEnumerator::GenomeEnumerator(std::size_t leaf_count, int max_depth, std::uint64_t budget)
    : leaf_count_(leaf_count), max_depth_(max_depth), total_(genome_space_size(leaf_count, max_depth)) {
  if (total_ > budget) {
    throw Error(ErrorKind::SpaceTooLarge,
                "space holds " + std::to_string(total_) + " genomes, budget is " + std::to_string(budget));
  }
  digits_.assign(leaf_count_ - 1, 1);
}

std::optional<Genome> GenomeEnumerator::next() {
  if (produced_ == total_) return std::nullopt;
  Genome g(digits_, max_depth_);
  ++produced_;
  // Odometer increment from the rightmost digit keeps the order
  // lexicographic.
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (digits_[i] < max_depth_) {
      ++digits_[i];
      break;
    }
    digits_[i] = 1;
  }
  return g;
}

std::uint64_t count_canonical(std::size_t leaf_count, int max_depth, std::uint64_t budget) {
  GenomeEnumerator en(leaf_count, max_depth, budget);
  std::uint64_t count = 0;
  // simplify is idempotent, so its image is exactly its fixed-point set.
  while (auto g = en.next()) {
    if (simplify(*g) == *g) ++count;
  }
  return count;
}

BruteForceResult brute_force_best(std::size_t leaf_count, int max_depth, const Evaluator& evaluator,
                                  std::uint64_t budget) {
  GenomeEnumerator en(leaf_count, max_depth, budget);
  std::optional<BruteForceResult> best;
  while (auto g = en.next()) {
    if (!(simplify(*g) == *g)) continue;
    const double f = evaluator(decode(*g));
    if (!best) {
      best = BruteForceResult{*g, f, 1};
      continue;
    }
    ++best->canonical_count;
    if (f > best->best_fitness) {
      best->best_genome = *g;
      best->best_fitness = f;
    }
  }
  if (!best) {
    throw Error(ErrorKind::EmptyInput, "space holds no canonical genome");
  }
  return *best;
}

std::vector<ExperimentCase> default_cases() {
  return {
      {12, 50, 2000},   {14, 100, 5000},  {16, 200, 10000}, {18, 500, 50000},  {20, 500, 50000},
      {22, 500, 50000}, {24, 500, 100000}, {26, 500, 100000}, {28, 500, 100000}, {30, 1000, 200000},
  };
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::size_t leaf_count, Algorithm algo,
                              std::size_t run_index) {
  std::uint64_t h = hash_combine(0x6f726765766f2d31ull, static_cast<std::uint64_t>(leaf_count));
  h = hash_combine(h, static_cast<std::uint64_t>(algo));
  h = hash_combine(h, static_cast<std::uint64_t>(run_index));
  return base_seed ^ h;
}

namespace {

void validate_experiment_config(const ExperimentConfig& cfg) {
  if (cfg.cases.empty()) {
    throw Error(ErrorKind::ConfigError, "experiment needs at least one case");
  }
  if (cfg.algorithms.empty()) {
    throw Error(ErrorKind::ConfigError, "experiment needs at least one algorithm");
  }
  if (cfg.runs_per_case < 1) {
    throw Error(ErrorKind::ConfigError, "experiment needs at least one run per case");
  }
  validate_env(cfg.env);
}

}  // namespace

void recompute_report_stats(ExperimentReport& report) {
  for (CaseReport& cr : report.cases) {
    double observed = 0.0;
    bool any = false;
    for (const CellStats& cell : cr.cells) {
      for (const RunRecord& run : cell.runs) {
        if (!any || run.best_fitness > observed) {
          observed = run.best_fitness;
          any = true;
        }
      }
    }
    cr.observed_best = any ? observed : 0.0;
    // Runs can only tie the exhaustive optimum, never beat it; preferring
    // the larger of the two keeps the report consistent even if they drift.
    if (cr.enumeration_best && *cr.enumeration_best >= cr.observed_best) {
      cr.f_best = *cr.enumeration_best;
      cr.f_best_source = "enumeration";
    } else {
      cr.f_best = cr.observed_best;
      cr.f_best_source = "observed";
    }
    for (CellStats& cell : cr.cells) {
      std::vector<double> bests;
      for (const RunRecord& run : cell.runs) bests.push_back(run.best_fitness);
      if (bests.empty()) {
        cell.apre_percent.reset();
        cell.success_rate = 0.0;
        continue;
      }
      if (cr.f_best > 0.0) {
        cell.apre_percent = apre(bests, cr.f_best);
        cell.success_rate = success_rate(bests, cr.f_best, 1e-9 * cr.f_best);
      } else {
        cell.apre_percent.reset();
        cell.success_rate = success_rate(bests, cr.f_best, 0.0);
      }
    }
  }

  report.pairwise.clear();
  const std::vector<Algorithm>& algos = report.config.algorithms;
  for (std::size_t i = 0; i < algos.size(); ++i) {
    for (std::size_t j = i + 1; j < algos.size(); ++j) {
      std::vector<double> x, y;
      for (const CaseReport& cr : report.cases) {
        const CellStats* ci = nullptr;
        const CellStats* cj = nullptr;
        for (const CellStats& cell : cr.cells) {
          if (cell.algorithm == algos[i]) ci = &cell;
          if (cell.algorithm == algos[j]) cj = &cell;
        }
        if (ci && cj && ci->apre_percent && cj->apre_percent) {
          x.push_back(*ci->apre_percent);
          y.push_back(*cj->apre_percent);
        }
      }
      if (x.size() >= 2 && x.size() <= 25) {
        report.pairwise.push_back(PairwiseTest{algos[i], algos[j], wilcoxon_signed_rank(x, y), x.size()});
      }
    }
  }
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate_experiment_config(cfg);
  const Evaluator evaluator = make_ir_evaluator(cfg.env);
  ExperimentReport report;
  report.config = cfg;
  for (const ExperimentCase& c : cfg.cases) {
    CaseReport cr;
    cr.config = c;
    for (Algorithm algo : cfg.algorithms) {
      CellStats cell;
      cell.algorithm = algo;
      for (std::size_t r = 0; r < cfg.runs_per_case; ++r) {
        GAConfig gc;
        gc.leaf_count = c.leaf_count;
        gc.max_depth = cfg.max_depth;
        gc.algorithm = algo;
        gc.population_size = c.population_size;
        gc.max_evaluations = c.max_evaluations;
        gc.mutation_rate = cfg.mutation_rate;
        gc.rts_window = cfg.rts_window;
        gc.seed = derive_run_seed(cfg.base_seed, c.leaf_count, algo, r);
        const RunResult res = run(gc, evaluator);
        cell.runs.push_back(RunRecord{res.seed, res.best_fitness, to_string(res.best_genome),
                                      res.evaluations_used, res.best_fitness_trajectory});
      }
      cr.cells.push_back(std::move(cell));
    }
    if (genome_space_size(c.leaf_count, cfg.max_depth) <= cfg.enumeration_budget) {
      const BruteForceResult bf = brute_force_best(c.leaf_count, cfg.max_depth, evaluator, cfg.enumeration_budget);
      cr.enumeration_best = bf.best_fitness;
      cr.enumeration_best_genome = to_string(bf.best_genome);
    }
    report.cases.push_back(std::move(cr));
  }
  recompute_report_stats(report);
  return report;
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json env_to_json(const EnvironmentParams& env) {
  return json{{"message_latency_ms", env.message_latency * 1000.0},
              {"process_service_rate", env.process_service_rate},
              {"response_service_rate", env.response_service_rate},
              {"query_rate", env.query_rate},
              {"utility_ceiling", env.utility_ceiling}};
}

EnvironmentParams env_from_json(const json& j) {
  EnvironmentParams env;
  for (const auto& [key, value] : j.items()) {
    if (key == "message_latency_ms") {
      env.message_latency = value.get<double>() / 1000.0;
    } else if (key == "process_service_rate") {
      env.process_service_rate = value.get<double>();
    } else if (key == "response_service_rate") {
      env.response_service_rate = value.get<double>();
    } else if (key == "query_rate") {
      env.query_rate = value.get<double>();
    } else if (key == "utility_ceiling") {
      env.utility_ceiling = value.get<double>();
    } else {
      throw Error(ErrorKind::ConfigError, "unknown environment key '" + key + "'");
    }
  }
  return env;
}

json config_to_json(const ExperimentConfig& cfg) {
  json cases = json::array();
  for (const ExperimentCase& c : cfg.cases) {
    cases.push_back(json{{"dbs", c.leaf_count}, {"pop", c.population_size}, {"evals", c.max_evaluations}});
  }
  json algos = json::array();
  for (Algorithm a : cfg.algorithms) algos.push_back(algorithm_name(a));
  return json{{"cases", cases},
              {"algorithms", algos},
              {"runs_per_case", cfg.runs_per_case},
              {"max_depth", cfg.max_depth},
              {"mutation_rate", cfg.mutation_rate},
              {"rts_window", cfg.rts_window},
              {"base_seed", cfg.base_seed},
              {"env", env_to_json(cfg.env)},
              {"enumeration_budget", cfg.enumeration_budget}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "cases") {
      cfg.cases.clear();
      for (const json& c : value) {
        ExperimentCase ec;
        if (!c.contains("dbs")) {
          throw Error(ErrorKind::ConfigError, "every case needs a 'dbs' entry");
        }
        ec.leaf_count = c.at("dbs").get<std::size_t>();
        ec.population_size = c.value("pop", ec.population_size);
        ec.max_evaluations = c.value("evals", ec.max_evaluations);
        cfg.cases.push_back(ec);
      }
    } else if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const json& a : value) cfg.algorithms.push_back(algorithm_from_name(a.get<std::string>()));
    } else if (key == "runs_per_case") {
      cfg.runs_per_case = value.get<std::size_t>();
    } else if (key == "max_depth") {
      cfg.max_depth = value.get<int>();
    } else if (key == "mutation_rate") {
      cfg.mutation_rate = value.get<double>();
    } else if (key == "rts_window") {
      cfg.rts_window = value.get<std::size_t>();
    } else if (key == "base_seed") {
      cfg.base_seed = value.get<std::uint64_t>();
    } else if (key == "env") {
      cfg.env = env_from_json(value);
    } else if (key == "enumeration_budget") {
      cfg.enumeration_budget = value.get<std::uint64_t>();
    } else {
      throw Error(ErrorKind::ConfigError, "unknown experiment key '" + key + "'");
    }
  }
  return cfg;
}

json trajectory_to_json(const std::vector<TrajectoryPoint>& traj) {
  json out = json::array();
  for (const TrajectoryPoint& p : traj) out.push_back(json::array({p.evaluation, p.fitness}));
  return out;
}

std::vector<TrajectoryPoint> trajectory_from_json(const json& j) {
  std::vector<TrajectoryPoint> traj;
  for (const json& p : j) traj.push_back(TrajectoryPoint{p.at(0).get<long long>(), p.at(1).get<double>()});
  return traj;
}

json report_to_json_value(const ExperimentReport& report) {
  json cases = json::array();
  for (const CaseReport& cr : report.cases) {
    json cells = json::array();
    for (const CellStats& cell : cr.cells) {
      json runs = json::array();
      for (const RunRecord& run : cell.runs) {
        runs.push_back(json{{"seed", run.seed},
                            {"best_fitness", run.best_fitness},
                            {"best_genome", run.best_genome},
                            {"evaluations_used", run.evaluations_used},
                            {"trajectory", trajectory_to_json(run.trajectory)}});
      }
      cells.push_back(json{{"algorithm", algorithm_name(cell.algorithm)},
                           {"apre_percent", cell.apre_percent ? json(*cell.apre_percent) : json(nullptr)},
                           {"sr", cell.success_rate},
                           {"runs", runs}});
    }
    cases.push_back(json{
        {"dbs", cr.config.leaf_count},
        {"pop", cr.config.population_size},
        {"evals", cr.config.max_evaluations},
        {"f_best", cr.f_best},
        {"f_best_source", cr.f_best_source},
        {"observed_best", cr.observed_best},
        {"enumeration_best", cr.enumeration_best ? json(*cr.enumeration_best) : json(nullptr)},
        {"enumeration_best_genome",
         cr.enumeration_best_genome ? json(*cr.enumeration_best_genome) : json(nullptr)},
        {"cells", cells}});
  }
  json pairwise = json::array();
  for (const PairwiseTest& p : report.pairwise) {
    pairwise.push_back(json{{"a", algorithm_name(p.a)},
                            {"b", algorithm_name(p.b)},
                            {"w_statistic", p.result.w_statistic},
                            {"n_effective", p.result.n_effective},
                            {"p_two_sided", p.result.p_two_sided},
                            {"cases_used", p.cases_used}});
  }
  return json{{"config", config_to_json(report.config)}, {"cases", cases}, {"pairwise", pairwise}};
}

ExperimentReport report_from_json_value(const json& j) {
  ExperimentReport report;
  report.config = config_from_json(j.at("config"));
  for (const json& c : j.at("cases")) {
    CaseReport cr;
    cr.config.leaf_count = c.at("dbs").get<std::size_t>();
    cr.config.population_size = c.at("pop").get<std::size_t>();
    cr.config.max_evaluations = c.at("evals").get<long long>();
    cr.f_best = c.at("f_best").get<double>();
    cr.f_best_source = c.at("f_best_source").get<std::string>();
    cr.observed_best = c.at("observed_best").get<double>();
    if (!c.at("enumeration_best").is_null()) cr.enumeration_best = c.at("enumeration_best").get<double>();
    if (!c.at("enumeration_best_genome").is_null()) {
      cr.enumeration_best_genome = c.at("enumeration_best_genome").get<std::string>();
    }
    for (const json& cellj : c.at("cells")) {
      CellStats cell;
      cell.algorithm = algorithm_from_name(cellj.at("algorithm").get<std::string>());
      if (!cellj.at("apre_percent").is_null()) cell.apre_percent = cellj.at("apre_percent").get<double>();
      cell.success_rate = cellj.at("sr").get<double>();
      for (const json& runj : cellj.at("runs")) {
        RunRecord run;
        run.seed = runj.at("seed").get<std::uint64_t>();
        run.best_fitness = runj.at("best_fitness").get<double>();
        run.best_genome = runj.at("best_genome").get<std::string>();
        run.evaluations_used = runj.at("evaluations_used").get<long long>();
        run.trajectory = trajectory_from_json(runj.at("trajectory"));
        cell.runs.push_back(std::move(run));
      }
      cr.cells.push_back(std::move(cell));
    }
    report.cases.push_back(std::move(cr));
  }
  for (const json& p : j.at("pairwise")) {
    PairwiseTest pt;
    pt.a = algorithm_from_name(p.at("a").get<std::string>());
    pt.b = algorithm_from_name(p.at("b").get<std::string>());
    pt.result.w_statistic = p.at("w_statistic").get<double>();
    pt.result.n_effective = p.at("n_effective").get<std::size_t>();
    pt.result.p_two_sided = p.at("p_two_sided").get<double>();
    pt.cases_used = p.at("cases_used").get<std::size_t>();
    report.pairwise.push_back(std::move(pt));
  }
  return report;
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
  return report_to_json_value(report).dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "case,algorithm,apre_percent,sr,f_best,runs\n";
  for (const CaseReport& cr : report.cases) {
    for (const CellStats& cell : cr.cells) {
      out << cr.config.leaf_count << ',' << algorithm_name(cell.algorithm) << ','
          << (cell.apre_percent ? fmt_double(*cell.apre_percent) : "nan") << ','
          << fmt_double(cell.success_rate) << ',' << fmt_double(cr.f_best) << ',' << cell.runs.size()
          << '\n';
    }
  }
  return out.str();
}

void write_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  }
  out << (format == ReportFormat::Json ? report_to_json(report) : report_to_csv(report));
  if (!out) {
    throw Error(ErrorKind::IoError, "failed while writing '" + path + "'");
  }
}

ExperimentReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, "malformed report '" + path + "': " + e.what());
  }
  try {
    return report_from_json_value(j);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, "report '" + path + "' misses fields: " + e.what());
  }
}

namespace {

const char* role_name(Role r) {
  switch (r) {
    case Role::Mediator: return "mediator";
    case Role::Aggregator: return "aggregator";
    case Role::Database: return "database";
  }
  return "database";
}

json node_to_json(const TreeNode& n) {
  json children = json::array();
  for (const TreeNode& c : n.children) children.push_back(node_to_json(c));
  return json{{"role", role_name(n.role)}, {"children", children}};
}

TreeNode node_from_json(const json& j, int level) {
  TreeNode n;
  n.level = level;
  const std::string role = j.at("role").get<std::string>();
  if (role == "mediator") {
    n.role = Role::Mediator;
  } else if (role == "aggregator") {
    n.role = Role::Aggregator;
  } else if (role == "database") {
    n.role = Role::Database;
  } else {
    throw Error(ErrorKind::MalformedTree, "unknown role '" + role + "'");
  }
  if (j.contains("children")) {
    for (const json& c : j.at("children")) n.children.push_back(node_from_json(c, level + 1));
  }
  return n;
}

}  // namespace

std::string tree_to_json(const OrganizationTree& t) {
  json roots = json::array();
  for (const TreeNode& r : t.roots) roots.push_back(node_to_json(r));
  return json{{"roots", roots}}.dump(2) + "\n";
}

OrganizationTree tree_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedTree, std::string("malformed tree JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("roots") || !j.at("roots").is_array()) {
    throw Error(ErrorKind::MalformedTree, "tree JSON must be an object with a 'roots' array");
  }
  OrganizationTree t;
  for (const json& r : j.at("roots")) t.roots.push_back(node_from_json(r, 1));
  validate_tree(t);
  return t;
}

std::string run_result_to_json(const GAConfig& cfg, const RunResult& result) {
  const Genome best_simplified = simplify(result.best_genome);
  json j{{"config",
          json{{"dbs", cfg.leaf_count},
               {"max_depth", cfg.max_depth},
               {"algo", algorithm_name(cfg.algorithm)},
               {"pop", cfg.population_size},
               {"evals", cfg.max_evaluations},
               {"mutation_rate", cfg.mutation_rate},
               {"rts_window", cfg.rts_window},
               {"seed", cfg.seed}}},
         {"best_fitness", result.best_fitness},
         {"best_genome", to_string(result.best_genome)},
         {"best_genome_simplified", to_string(best_simplified)},
         {"evaluations_used", result.evaluations_used},
         {"trajectory", trajectory_to_json(result.best_fitness_trajectory)}};
  return j.dump(2) + "\n";
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("malformed config JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace orgevo
