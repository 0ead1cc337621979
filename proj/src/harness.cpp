#include "famv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "famv/problems.hpp"

namespace famv::harness {

namespace {

struct Variant {
  std::string_view name;
  DistanceKind distance;
  bool adapt_alpha;
  bool adapt_gamma;
};

// Fixed-parameter variants start from alpha = 1.5, gamma = 0.1; adapted
// parameters start from alpha_init = 2, gamma_init = 0.05.
constexpr Variant kVariants[] = {
    {"fa", DistanceKind::EuclideanOnly, false, false},
    {"famv-h", DistanceKind::MixedEuclideanHamming, false, false},
    {"famv-h-adaptive", DistanceKind::MixedEuclideanHamming, true, true},
    {"famv-g", DistanceKind::Gower, false, false},
    {"famv-g-adaptive", DistanceKind::Gower, true, true},
    {"famv-h-alpha", DistanceKind::MixedEuclideanHamming, true, false},
    {"famv-h-gamma", DistanceKind::MixedEuclideanHamming, false, true},
    {"famv-g-alpha", DistanceKind::Gower, true, false},
    {"famv-g-gamma", DistanceKind::Gower, false, true},
};

const Variant* find_variant(const std::string& name) {
  for (const auto& v : kVariants)
    if (v.name == name) return &v;
  return nullptr;
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw ConfigError("invalid value '" + text + "' for '" + key + "'");
  return value;
}

bool parse_flag(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean '" + text + "' for '" + key + "'");
}

DistanceKind parse_distance(const std::string& text) {
  for (auto kind : {DistanceKind::EuclideanOnly, DistanceKind::MixedEuclideanHamming, DistanceKind::Gower})
    if (to_string(kind) == text) return kind;
  throw ConfigError("unknown distance '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

bool is_engineering(const std::string& problem) {
  return problem == "vessel" || problem == "beam" || problem == "csd";
}

}  // namespace

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& v : kVariants) out.emplace_back(v.name);
    out.emplace_back("ga");
    return out;
  }();
  return names;
}

bool is_firefly_algorithm(const std::string& name) { return find_variant(name) != nullptr; }

FireflyConfig firefly_config(const std::string& name, const Overrides& overrides) {
  const Variant* variant = find_variant(name);
  if (!variant) throw ConfigError("unknown firefly variant '" + name + "'");
  FireflyConfig config;
  config.distance = variant->distance;
  config.adapt_alpha = variant->adapt_alpha;
  config.adapt_gamma = variant->adapt_gamma;
  config.alpha = variant->adapt_alpha ? 2.0 : 1.5;
  config.gamma = variant->adapt_gamma ? 0.05 : 0.1;
  for (const auto& [key, value] : overrides) {
    if (key == "pop_size") config.pop_size = parse_value<std::int64_t>(key, value);
    else if (key == "beta0") config.beta0 = parse_value<Scalar>(key, value);
    else if (key == "alpha") config.alpha = parse_value<Scalar>(key, value);
    else if (key == "gamma") config.gamma = parse_value<Scalar>(key, value);
    else if (key == "k") config.k = parse_value<Scalar>(key, value);
    else if (key == "distance") config.distance = parse_distance(value);
    else if (key == "adapt_alpha") config.adapt_alpha = parse_flag(key, value);
    else if (key == "adapt_gamma") config.adapt_gamma = parse_flag(key, value);
    else throw ConfigError("unknown firefly setting '" + key + "'");
  }
  config.validate();
  return config;
}

GaConfig ga_config(const Overrides& overrides) {
  GaConfig config;
  for (const auto& [key, value] : overrides) {
    if (key == "pop_size") config.pop_size = parse_value<std::int64_t>(key, value);
    else if (key == "p_crossover") config.p_crossover = parse_value<Scalar>(key, value);
    else if (key == "p_mutation") config.p_mutation = parse_value<Scalar>(key, value);
    else if (key == "tournament_size") config.tournament_size = parse_value<std::int64_t>(key, value);
    else if (key == "elitism_count") config.elitism_count = parse_value<std::int64_t>(key, value);
    else if (key == "bits_per_continuous") config.bits_per_continuous = parse_value<int>(key, value);
    else throw ConfigError("unknown GA setting '" + key + "'");
  }
  config.validate();
  return config;
}

RunTrace run_algorithm(const AlgorithmSpec& algo, const Problem& problem, std::int64_t max_fe, std::uint64_t seed) {
  if (algo.name == "ga") {
    GaConfig config = ga_config(algo.overrides);
    config.max_fe = max_fe;
    config.seed = seed;
    return run_ga(problem, config);
  }
  FireflyConfig config = firefly_config(algo.name, algo.overrides);
  config.max_fe = max_fe;
  config.seed = seed;
  if (algo.name == "fa") return run_classical_fa(problem, config);
  return run_famv(problem, config);
}

std::int64_t default_budget(const std::string& problem) {
  return is_engineering(problem) ? kEngineeringBudget : kSyntheticBudget;
}

void ExperimentSpec::validate() const {
  if (problems.empty()) throw ConfigError("no problems selected");
  if (algorithms.empty()) throw ConfigError("no algorithms selected");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (budget && *budget < 1) throw ConfigError("budget must be positive");
  if (stride < 1) throw ConfigError("trace stride must be positive");
  for (const auto& p : problems) (void)make_problem(p);
  for (const auto& a : algorithms) {
    if (a.name == "ga")
      (void)ga_config(a.overrides);
    else
      (void)firefly_config(a.name, a.overrides);
  }
}

ExperimentSpec load_spec(const std::filesystem::path& file) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(file.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("cannot read config '" + file.string() + "': " + e.message());
  }

  ExperimentSpec spec;
  Overrides firefly_defaults;
  Overrides ga_defaults;
  std::map<std::string, Overrides> per_algorithm;
  std::vector<std::string> algorithm_list;

  for (const auto& [section, body] : tree) {
    Overrides values;
    for (const auto& [key, node] : body) values[key] = node.get_value<std::string>();
    if (section == "experiment") {
      for (const auto& [key, value] : values) {
        if (key == "problems") spec.problems = split_list(value);
        else if (key == "algorithms") algorithm_list = split_list(value);
        else if (key == "runs") spec.runs = parse_value<std::int64_t>(key, value);
        else if (key == "budget") spec.budget = parse_value<std::int64_t>(key, value);
        else if (key == "seed") spec.base_seed = parse_value<std::uint64_t>(key, value);
        else if (key == "stride") spec.stride = parse_value<std::int64_t>(key, value);
        else if (key == "threads") spec.threads = parse_value<unsigned>(key, value);
        else if (key == "out") spec.out_dir = value;
        else throw ConfigError("unknown [experiment] key '" + key + "'");
      }
    } else if (section == "firefly") {
      firefly_defaults = values;
    } else if (section == "ga") {
      ga_defaults = values;
    } else if (is_firefly_algorithm(section)) {
      per_algorithm[section] = values;
    } else {
      throw ConfigError("unknown config section [" + section + "]");
    }
  }

  for (const auto& name : algorithm_list) {
    Overrides merged = name == "ga" ? ga_defaults : firefly_defaults;
    if (const auto it = per_algorithm.find(name); it != per_algorithm.end())
      for (const auto& [k, v] : it->second) merged[k] = v;
    spec.algorithms.push_back({name, merged});
  }
  return spec;
}

std::string format_number(Scalar v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_name(const std::string& problem, const std::string& algorithm, std::int64_t run) {
  std::string p = problem;
  std::replace(p.begin(), p.end(), ':', '-');
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "%03lld", static_cast<long long>(run));
  return p + "__" + algorithm + "__run" + suffix;
}

std::string trace_csv(const RunTrace& trace, std::int64_t stride) {
  if (stride < 1) throw ConfigError("trace stride must be positive");
  std::string out = "fe,best\n";
  if (trace.samples.empty()) return out;
  const std::int64_t last = trace.samples.back().fe;
  std::size_t s = 0;
  auto best_at = [&](std::int64_t fe) {
    while (s + 1 < trace.samples.size() && trace.samples[s + 1].fe <= fe) ++s;
    return trace.samples[s].best;
  };
  for (std::int64_t fe = stride; fe < last; fe += stride) {
    if (fe < trace.samples.front().fe) continue;
    out += std::to_string(fe) + "," + format_number(best_at(fe)) + "\n";
  }
  out += std::to_string(last) + "," + format_number(trace.samples.back().best) + "\n";
  return out;
}

void emit_trace(const RunTrace& trace, const std::filesystem::path& path, std::int64_t stride) {
  write_file(path, trace_csv(trace, stride));
}

void emit_summary(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  std::string out = "problem,algorithm,run,seed,fe,budget,best,ae\n";
  for (const auto& r : records) {
    out += r.problem + "," + r.algorithm + "," + std::to_string(r.run) + "," + std::to_string(r.seed) + "," +
           std::to_string(r.fe) + "," + std::to_string(r.budget) + "," + format_number(r.best) + "," +
           format_number(r.ae) + "\n";
  }
  write_file(path, out);
}

std::vector<RunRecord> read_summary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  if (line != "problem,algorithm,run,seed,fe,budget,best,ae")
    throw ConfigError("'" + path.string() + "' is not a summary table");
  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw ConfigError("malformed summary row: " + line);
    RunRecord r;
    r.problem = f[0];
    r.algorithm = f[1];
    r.run = parse_value<std::int64_t>("run", f[2]);
    r.seed = parse_value<std::uint64_t>("seed", f[3]);
    r.fe = parse_value<std::int64_t>("fe", f[4]);
    r.budget = parse_value<std::int64_t>("budget", f[5]);
    r.best = std::stod(f[6]);
    r.ae = std::stod(f[7]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ProblemComparison> compare_records(const std::vector<RunRecord>& records) {
  std::vector<ProblemComparison> out;
  for (const auto& r : records) {
    auto p = std::find_if(out.begin(), out.end(), [&](const auto& c) { return c.problem == r.problem; });
    if (p == out.end()) {
      out.push_back({r.problem, {}, {}});
      p = out.end() - 1;
    }
    auto g = std::find_if(p->samples.begin(), p->samples.end(), [&](const auto& s) { return s.name == r.algorithm; });
    if (g == p->samples.end()) {
      p->samples.push_back({r.algorithm, {}});
      g = p->samples.end() - 1;
    }
    g->values.push_back(r.ae);
  }
  for (auto& c : out) c.report = stats::compare(c.samples);
  return out;
}

std::vector<ResultRow> result_rows(const std::vector<ProblemComparison>& comparisons) {
  std::vector<ResultRow> rows;
  for (const auto& c : comparisons)
    for (const auto& g : c.report.groups) rows.push_back({c.problem, g.name, g.mean, g.std, g.is_best, g.similar_to_best});
  return rows;
}

std::vector<CountRow> count_rows(const std::vector<ResultRow>& rows) {
  std::vector<CountRow> counts;
  for (const auto& r : rows) {
    auto it = std::find_if(counts.begin(), counts.end(), [&](const auto& c) { return c.algorithm == r.algorithm; });
    if (it == counts.end()) {
      counts.push_back({r.algorithm});
      it = counts.end() - 1;
    }
    it->best += r.is_best ? 1 : 0;
    it->similar += r.is_similar_to_best ? 1 : 0;
  }
  return counts;
}

void emit_results_table(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::string out = "problem,algorithm,mean_ae,std_ae,is_best,is_similar_to_best\n";
  for (const auto& r : rows) {
    out += r.problem + "," + r.algorithm + "," + format_number(r.mean_ae) + "," + format_number(r.std_ae) + "," +
           (r.is_best ? "true" : "false") + "," + (r.is_similar_to_best ? "true" : "false") + "\n";
  }
  write_file(path, out);
}

void emit_counts(const std::vector<CountRow>& counts, const std::filesystem::path& path) {
  std::string out = "algorithm,best_count,similar_count\n";
  for (const auto& c : counts)
    out += c.algorithm + "," + std::to_string(c.best) + "," + std::to_string(c.similar) + "\n";
  write_file(path, out);
}

void emit_comparisons(const std::vector<ProblemComparison>& comparisons, const std::filesystem::path& path) {
  std::string out = "problem,test,group_a,group_b,statistic,raw_p,adjusted_p,significant\n";
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  for (const auto& c : comparisons) {
    const auto& rep = c.report;
    if (c.samples.size() < 2) continue;
    out += c.problem + ",kruskal-wallis,*,*," + format_number(rep.omnibus.h) + "," + format_number(rep.omnibus.p) +
           "," + format_number(rep.omnibus.p) + "," + flag(rep.omnibus_significant) + "\n";
    auto emit = [&](const char* test, const stats::PairTest& t) {
      out += c.problem + "," + test + "," + c.samples[t.i].name + "," + c.samples[t.j].name + "," +
             format_number(t.z) + "," + format_number(t.raw_p) + "," + format_number(t.adjusted_p) + "," +
             flag(t.significant) + "\n";
    };
    for (const auto& t : rep.pairwise) emit("dunn", t);
    for (const auto& t : rep.versus_best) emit("dunn-vs-best", t);
  }
  write_file(path, out);
}

ExperimentResult write_comparison(const std::filesystem::path& dir) {
  ExperimentResult result;
  result.records = read_summary(dir / "summary.csv");
  const auto comparisons = compare_records(result.records);
  result.results = result_rows(comparisons);
  result.counts = count_rows(result.results);
  emit_results_table(result.results, dir / "results.csv");
  emit_counts(result.counts, dir / "counts.csv");
  emit_comparisons(comparisons, dir / "comparisons.csv");
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();

  struct Cell {
    std::size_t problem;
    std::size_t algorithm;
    std::int64_t run;
  };
  std::vector<Problem> problems;
  for (const auto& name : spec.problems) problems.push_back(make_problem(name));
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a)
      for (std::int64_t r = 0; r < spec.runs; ++r) cells.push_back({p, a, r});

  std::vector<std::optional<RunRecord>> slots(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};
  const auto trace_dir = spec.out_dir / "traces";
  std::filesystem::create_directories(trace_dir);

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto& cell = cells[i];
      const auto& problem_name = spec.problems[cell.problem];
      const auto& algo = spec.algorithms[cell.algorithm];
      const std::int64_t budget = spec.budget.value_or(default_budget(problem_name));
      const std::uint64_t seed = spec.seed_for(cell.run);
      try {
        const RunTrace trace = run_algorithm(algo, problems[cell.problem], budget, seed);
        emit_trace(trace, trace_dir / (cell_name(problem_name, algo.name, cell.run) + ".csv"), spec.stride);
        slots[i] = RunRecord{problem_name, algo.name, cell.run, seed, trace.fe_used, budget,
                             trace.best(), absolute_error(problems[cell.problem], trace.best())};
      } catch (const std::exception& e) {
        errors[i] = cell_name(problem_name, algo.name, cell.run) + ": " + e.what();
      }
    }
  };

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  ExperimentResult result;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (slots[i]) result.records.push_back(*slots[i]);
    if (!errors[i].empty()) result.errors.push_back(errors[i]);
  }
  emit_summary(result.records, spec.out_dir / "summary.csv");
  if (!result.errors.empty()) {
    std::string text;
    for (const auto& e : result.errors) text += e + "\n";
    write_file(spec.out_dir / "errors.txt", text);
  }
  if (!result.records.empty()) {
    const auto comparisons = compare_records(result.records);
    result.results = result_rows(comparisons);
    result.counts = count_rows(result.results);
    emit_results_table(result.results, spec.out_dir / "results.csv");
    emit_counts(result.counts, spec.out_dir / "counts.csv");
    emit_comparisons(comparisons, spec.out_dir / "comparisons.csv");
  }
  return result;
}

}  // namespace famv::harness
