#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "famv/harness.hpp"
#include "famv/problems.hpp"

namespace {

std::vector<std::string> flatten(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const auto comma = item.find(',', start);
      const auto piece = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!piece.empty()) out.push_back(piece);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  namespace h = famv::harness;
  CLI::App app{"Mixed-variable firefly optimization experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an (algorithm x problem x seed) grid");
  std::vector<std::string> problems;
  std::vector<std::string> algos;
  std::int64_t runs = 30;
  std::int64_t budget = 0;
  std::uint64_t seed = 1;
  std::string out_dir = "results";
  std::string config_file;
  std::int64_t stride = h::kDefaultStride;
  unsigned threads = 0;
  auto* problem_opt = run->add_option("--problem", problems, "Problem name(s); comma-separated or repeated");
  auto* algo_opt = run->add_option("--algo", algos, "Algorithm name(s); comma-separated or repeated");
  auto* runs_opt = run->add_option("--runs", runs, "Independent runs per cell");
  auto* budget_opt = run->add_option("--budget", budget, "Function evaluations per run (default: per problem)");
  auto* seed_opt = run->add_option("--seed", seed, "Base seed; run r uses seed + r");
  auto* out_opt = run->add_option("--out", out_dir, "Output directory");
  run->add_option("--config", config_file, "INI experiment file; flags override it")->check(CLI::ExistingFile);
  auto* stride_opt = run->add_option("--stride", stride, "Trace sampling stride in FEs");
  auto* threads_opt = run->add_option("--threads", threads, "Worker threads (0: all cores)");

  auto* compare = app.add_subcommand("compare", "Recompute statistics from an existing summary.csv");
  std::string in_dir;
  compare->add_option("--in", in_dir, "Directory holding summary.csv")->required();

  auto* list = app.add_subcommand("list", "List problems and algorithms");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      h::ExperimentSpec spec = config_file.empty() ? h::ExperimentSpec{} : h::load_spec(config_file);
      if (*problem_opt) spec.problems = flatten(problems);
      if (*algo_opt) {
        spec.algorithms.clear();
        for (const auto& name : flatten(algos)) spec.algorithms.push_back({name, {}});
      }
      if (*runs_opt) spec.runs = runs;
      if (*budget_opt) spec.budget = budget;
      if (*seed_opt) spec.base_seed = seed;
      if (*out_opt || config_file.empty()) spec.out_dir = out_dir;
      if (*stride_opt) spec.stride = stride;
      if (*threads_opt) spec.threads = threads;

      const auto result = h::run_experiment(spec);
      std::cout << "wrote " << result.records.size() << " runs to " << spec.out_dir.string() << "\n";
      for (const auto& row : result.results) {
        std::cout << row.problem << "  " << row.algorithm << "  mean_ae=" << row.mean_ae << "  std_ae=" << row.std_ae
                  << (row.is_best ? "  *" : "") << (row.is_similar_to_best ? "  ~" : "") << "\n";
      }
      for (const auto& e : result.errors) std::cerr << "run failed: " << e << "\n";
      return result.errors.empty() ? EXIT_SUCCESS : 3;
    }
    if (*compare) {
      const auto result = h::write_comparison(in_dir);
      for (const auto& c : result.counts)
        std::cout << c.algorithm << "  best=" << c.best << "  similar=" << c.similar << "\n";
      return EXIT_SUCCESS;
    }
    if (*list) {
      std::cout << "problems:";
      for (const auto& p : famv::problem_names()) std::cout << " " << p;
      std::cout << "\nalgorithms:";
      for (const auto& a : h::algorithm_names()) std::cout << " " << a;
      std::cout << "\n";
      return EXIT_SUCCESS;
    }
  } catch (const famv::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return EXIT_SUCCESS;
}
