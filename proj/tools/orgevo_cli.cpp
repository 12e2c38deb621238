// Command-line front end: single runs, batch experiments, space enumeration,
// report statistics, and genome/tree conversions.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "orgevo/harness.hpp"

namespace {

using namespace orgevo;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorKind::IoError, "failed while reading '" + path + "'");
  }
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  }
  out << text;
  if (!out) {
    throw Error(ErrorKind::IoError, "failed while writing '" + path + "'");
  }
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::IoError:
      return 3;
    case ErrorKind::SpaceTooLarge:
      return 2;
    default:
      return 1;
  }
}

struct RunFlags {
  std::size_t dbs = 0;
  int max_depth = 4;
  std::string algo = "hga";
  std::size_t pop = 50;
  long long evals = 2000;
  double mutation_rate = 0.1;
  std::size_t rts_window = 5;
  std::uint64_t seed = 0;
  std::string out;
};

int do_run(const RunFlags& flags) {
  GAConfig cfg;
  cfg.leaf_count = flags.dbs;
  cfg.max_depth = flags.max_depth;
  cfg.algorithm = algorithm_from_name(flags.algo);
  cfg.population_size = flags.pop;
  cfg.max_evaluations = flags.evals;
  cfg.mutation_rate = flags.mutation_rate;
  cfg.rts_window = flags.rts_window;
  cfg.seed = flags.seed;
  validate_config(cfg);
  const RunResult result = run(cfg, make_ir_evaluator(EnvironmentParams{}));
  const std::string text = run_result_to_json(cfg, result);
  if (flags.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(flags.out, text);
    std::cout << "best " << result.best_fitness << " after " << result.evaluations_used
              << " evaluations; report written to " << flags.out << "\n";
  }
  if (result.best_fitness <= 0.0) {
    std::cerr << "no feasible organization found: every evaluated candidate scored zero utility\n";
    return 2;
  }
  return 0;
}

int do_experiment(const std::string& config_path, const std::string& out_dir) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = experiment_config_from_json(read_text_file(config_path));
  }
  const ExperimentReport report = run_experiment(cfg);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::IoError, "cannot create directory '" + out_dir + "': " + ec.message());
  }
  const std::string json_path = (std::filesystem::path(out_dir) / "report.json").string();
  const std::string csv_path = (std::filesystem::path(out_dir) / "report.csv").string();
  write_report(report, ReportFormat::Json, json_path);
  write_report(report, ReportFormat::Csv, csv_path);
  std::cout << report_to_csv(report);
  for (const PairwiseTest& p : report.pairwise) {
    std::cout << algorithm_name(p.a) << " vs " << algorithm_name(p.b) << ": W=" << p.result.w_statistic
              << " n=" << p.result.n_effective << " p=" << p.result.p_two_sided << " over "
              << p.cases_used << " cases\n";
  }
  std::cout << "reports written to " << json_path << " and " << csv_path << "\n";
  return 0;
}

int do_enumerate(std::size_t dbs, int max_depth, bool count_only, std::uint64_t budget) {
  if (count_only) {
    std::cout << "genomes: " << genome_space_size(dbs, max_depth) << "\n";
    std::cout << "canonical: " << count_canonical(dbs, max_depth, budget) << "\n";
    return 0;
  }
  GenomeEnumerator en(dbs, max_depth, budget);
  while (auto g = en.next()) std::cout << to_string(*g) << "\n";
  return 0;
}

int do_stats(const std::vector<std::string>& paths) {
  for (const std::string& path : paths) {
    ExperimentReport report = read_report(path);
    recompute_report_stats(report);
    if (paths.size() > 1) std::cout << "# " << path << "\n";
    std::cout << report_to_csv(report);
    for (const PairwiseTest& p : report.pairwise) {
      std::cout << algorithm_name(p.a) << " vs " << algorithm_name(p.b) << ": W=" << p.result.w_statistic
                << " n=" << p.result.n_effective << " p=" << p.result.p_two_sided << " over "
                << p.cases_used << " cases\n";
    }
  }
  return 0;
}

int do_encode(const std::string& tree_path) {
  const OrganizationTree t = tree_from_json(read_text_file(tree_path));
  std::cout << to_string(encode(t)) << "\n";
  return 0;
}

int do_decode(const std::string& genome_text, int max_depth) {
  const Genome g = parse_genome(genome_text, max_depth);
  std::cout << tree_to_json(decode(g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical organization optimizer"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Execute one optimization run");
  run_cmd->add_option("--dbs", run_flags.dbs, "Number of databases")->required();
  run_cmd->add_option("--max-depth", run_flags.max_depth, "Maximum tree depth");
  run_cmd->add_option("--algo", run_flags.algo, "Algorithm: hga, sga1, or sga2");
  run_cmd->add_option("--pop", run_flags.pop, "Population size");
  run_cmd->add_option("--evals", run_flags.evals, "Candidate-evaluation budget");
  run_cmd->add_option("--mutation-rate", run_flags.mutation_rate, "Per-digit mutation probability");
  run_cmd->add_option("--rts-window", run_flags.rts_window, "Replacement tournament window");
  run_cmd->add_option("--seed", run_flags.seed, "Random seed");
  run_cmd->add_option("--out", run_flags.out, "Write the run report JSON here instead of stdout");

  std::string config_path;
  std::string out_dir = ".";
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Run a batch experiment and write reports");
  exp_cmd->add_option("--config", config_path, "Experiment configuration JSON (defaults when omitted)");
  exp_cmd->add_option("--out-dir", out_dir, "Directory for report.json and report.csv");

  std::size_t enum_dbs = 0;
  int enum_depth = 4;
  bool count_only = false;
  std::uint64_t budget = kDefaultEnumerationBudget;
  CLI::App* enum_cmd = app.add_subcommand("enumerate", "List or count the genome space");
  enum_cmd->add_option("--dbs", enum_dbs, "Number of databases")->required();
  enum_cmd->add_option("--max-depth", enum_depth, "Maximum tree depth");
  enum_cmd->add_flag("--count-only", count_only, "Print totals instead of the genomes");
  enum_cmd->add_option("--budget", budget, "Largest space the enumerator will walk");

  std::vector<std::string> report_paths;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Recompute statistics from stored reports");
  stats_cmd->add_option("--reports", report_paths, "Report JSON files")->required()->expected(-1);

  std::string tree_path;
  CLI::App* encode_cmd = app.add_subcommand("encode", "Encode a tree JSON file into digits");
  encode_cmd->add_option("--tree", tree_path, "Tree JSON file")->required();

  std::string genome_text;
  int decode_depth = 4;
  CLI::App* decode_cmd = app.add_subcommand("decode", "Decode digits into the tree JSON");
  decode_cmd->add_option("--genome", genome_text, "Space-separated digits, e.g. \"2 2 3 1 2 3\"")
      ->required();
  decode_cmd->add_option("--max-depth", decode_depth, "Maximum tree depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return do_run(run_flags);
    if (*exp_cmd) return do_experiment(config_path, out_dir);
    if (*enum_cmd) return do_enumerate(enum_dbs, enum_depth, count_only, budget);
    if (*stats_cmd) return do_stats(report_paths);
    if (*encode_cmd) return do_encode(tree_path);
    if (*decode_cmd) return do_decode(genome_text, decode_depth);
  } catch (const Error& e) {
    std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
