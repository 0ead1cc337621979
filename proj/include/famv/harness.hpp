#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "famv/core.hpp"
#include "famv/firefly.hpp"
#include "famv/ga.hpp"
#include "famv/run_trace.hpp"
#include "famv/stats.hpp"

namespace famv::harness {

inline constexpr std::int64_t kSyntheticBudget = 100'000;
inline constexpr std::int64_t kEngineeringBudget = 10'000;
inline constexpr std::int64_t kDefaultStride = 250;

/// Key/value overrides, e.g. {"alpha", "1.2"}; keys follow FireflyConfig/GaConfig member names.
using Overrides = std::map<std::string, std::string>;

struct AlgorithmSpec {
  std::string name;
  Overrides overrides;
};

/// The algorithm grid: fa, famv-h, famv-h-adaptive, famv-g, famv-g-adaptive,
/// famv-h-alpha, famv-h-gamma, famv-g-alpha, famv-g-gamma, ga.
const std::vector<std::string>& algorithm_names();
bool is_firefly_algorithm(const std::string& name);

/// Default configuration of a firefly variant with overrides applied. Throws ConfigError.
FireflyConfig firefly_config(const std::string& name, const Overrides& overrides = {});
GaConfig ga_config(const Overrides& overrides = {});

/// Runs one algorithm once; max_fe and seed override whatever the config holds.
RunTrace run_algorithm(const AlgorithmSpec& algo, const Problem& problem, std::int64_t max_fe, std::uint64_t seed);

/// Default FE budget for a problem: 10k for engineering problems, 100k otherwise.
std::int64_t default_budget(const std::string& problem);

struct ExperimentSpec {
  std::vector<std::string> problems;
  std::vector<AlgorithmSpec> algorithms;
  std::int64_t runs = 30;
  std::optional<std::int64_t> budget;  // per-problem default when unset
  std::uint64_t base_seed = 1;
  std::filesystem::path out_dir = "results";
  std::int64_t stride = kDefaultStride;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Seed of run `run`: base_seed + run.
  std::uint64_t seed_for(std::int64_t run) const { return base_seed + static_cast<std::uint64_t>(run); }
  /// Resolves every name; throws ConfigError before anything runs.
  void validate() const;
};

/**
 * Reads an INI-style file into a spec. Sections: [experiment] (problems,
 * algorithms, runs, budget, seed, stride, threads, out), [firefly] and [ga]
 * (defaults for every algorithm of that family), and [<algorithm name>]
 * (overrides for one algorithm).
 */
ExperimentSpec load_spec(const std::filesystem::path& file);

struct RunRecord {
  std::string problem;
  std::string algorithm;
  std::int64_t run = 0;
  std::uint64_t seed = 0;
  std::int64_t fe = 0;
  std::int64_t budget = 0;
  Scalar best = 0.0;
  Scalar ae = 0.0;
};

struct ResultRow {
  std::string problem;
  std::string algorithm;
  Scalar mean_ae;
  Scalar std_ae;
  bool is_best;
  bool is_similar_to_best;
};

struct CountRow {
  std::string algorithm;
  std::int64_t best = 0;
  std::int64_t similar = 0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<ResultRow> results;
  std::vector<CountRow> counts;
  std::vector<std::string> errors;
};

/**
 * Runs the (problem, algorithm, run) grid, writing traces/<cell>.csv per run,
 * summary.csv, then the comparison outputs (see write_comparison).
 */
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// CSV "fe,best" at multiples of `stride` plus the final evaluation.
void emit_trace(const RunTrace& trace, const std::filesystem::path& path, std::int64_t stride);
std::string trace_csv(const RunTrace& trace, std::int64_t stride);

void emit_summary(const std::vector<RunRecord>& records, const std::filesystem::path& path);
std::vector<RunRecord> read_summary(const std::filesystem::path& path);

/// Per-problem statistics over summary records, in first-appearance order.
struct ProblemComparison {
  std::string problem;
  stats::SampleSet samples;
  stats::ComparisonReport report;
};
std::vector<ProblemComparison> compare_records(const std::vector<RunRecord>& records);

std::vector<ResultRow> result_rows(const std::vector<ProblemComparison>& comparisons);
std::vector<CountRow> count_rows(const std::vector<ResultRow>& rows);

void emit_results_table(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
void emit_counts(const std::vector<CountRow>& counts, const std::filesystem::path& path);
/// Omnibus rows plus every pairwise and best-vs-other Dunn test.
void emit_comparisons(const std::vector<ProblemComparison>& comparisons, const std::filesystem::path& path);

/// Writes results.csv, counts.csv and comparisons.csv into `dir` from its summary.csv.
ExperimentResult write_comparison(const std::filesystem::path& dir);

std::string format_number(Scalar v);
std::string cell_name(const std::string& problem, const std::string& algorithm, std::int64_t run);

}  // namespace famv::harness
