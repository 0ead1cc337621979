// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "famv/distance.hpp"
#include "famv/firefly.hpp"
#include "famv/harness.hpp"
#include "famv/problems.hpp"
#include "famv/stats.hpp"
#include "stats_reference.hpp"

using namespace famv;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Scalar mean_of(const std::vector<Scalar>& v) { return stats::mean(v); }

// 1. FAmv_H beats classical FA by at least 10x on the mixed sphere.
Outcome famv_beats_fa() {
  const auto problem = make_problem("sphere:20");
  std::vector<Scalar> fa, famv;
  for (std::int64_t run = 0; run < 30; ++run) {
    const std::uint64_t seed = 1 + static_cast<std::uint64_t>(run);
    fa.push_back(absolute_error(problem, harness::run_algorithm({"fa", {}}, problem, 20'000, seed).best()));
    famv.push_back(absolute_error(problem, harness::run_algorithm({"famv-h", {}}, problem, 20'000, seed).best()));
  }
  const Scalar m_fa = mean_of(fa), m_famv = mean_of(famv);
  return {m_famv <= m_fa / 10.0, fmt("FA mean AE %.4g, FAmv_H mean AE %.4g, ratio %.3g", m_fa, m_famv, m_fa / m_famv)};
}

// 2. Adaptive schedule endpoints and monotonicity.
Outcome schedule_endpoints() {
  bool ok = true;
  std::string why;
  for (Scalar init : {0.5, 1.5, 2.0, 3.0}) {
    const auto p0 = adapt_parameters(init, init, 0.0);
    const auto p1 = adapt_parameters(init, init, 1.0);
    if (p0.alpha != init || p0.gamma != init) ok = false, why = "progress 0 differs from init";
    if (p1.alpha != 0.01 || p1.gamma != 0.01) ok = false, why = "progress 1 differs from 0.01";
    Scalar prev = p0.alpha;
    for (int i = 1; i <= 1000; ++i) {
      const Scalar a = adapt_parameters(init, init, i / 1000.0).alpha;
      if (a > prev || a < 0.01) ok = false, why = "not monotone or below floor";
      prev = a;
    }
  }
  EvaluationBudget b(1000);
  if (adapt_parameters(2.0, 0.1, b).alpha != 2.0) ok = false, why = "budget overload at 0";
  b.consume(1000);
  if (adapt_parameters(2.0, 0.1, b).alpha != 0.01) ok = false, why = "budget overload at max";
  return {ok, ok ? "alpha(0) = init, alpha(1) = 0.01, 1000 samples non-increasing" : why};
}

// Independent loop-based reference distances.
Scalar ref_euclid(const ContVector& a, const ContVector& b) {
  Scalar s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}
Scalar ref_hamming(const DiscVector& a, const DiscVector& b) {
  Scalar s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) s += a[k] != b[k] ? 1.0 : 0.0;
  return s;
}

// 3. Distance axioms.
Outcome distance_axioms() {
  const std::vector<SearchSpace> spaces{
      SearchSpace({Continuous{-5, 5}, IntegerRange{0, 9}, Categorical{{"a", "b", "c"}}, Continuous{0, 100},
                   Categorical{{"x", "y"}}}),
      SearchSpace({Continuous{-1, 1}, Continuous{0, 3}, Continuous{-100, 100}}),
      SearchSpace({IntegerRange{-2, 2}, Categorical{{"p", "q", "r", "s"}}, IntegerRange{0, 1}}),
  };
  constexpr Scalar tol = 1e-12;
  Rng rng(20240601);
  long checked = 0;
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const auto& space = spaces[si];
    const auto D = static_cast<Scalar>(space.dimension());
    for (int t = 0; t < 100'000; ++t) {
      const auto x = random_solution(space, rng);
      const auto y = random_solution(space, rng);
      for (auto kind : {DistanceKind::MixedEuclideanHamming, DistanceKind::Gower}) {
        const Scalar dxy = distance(kind, space, x, y);
        const Scalar dyx = distance(kind, space, y, x);
        if (dxy < 0.0) return {false, "negative distance"};
        if (std::abs(dxy - dyx) > tol) return {false, "asymmetric distance"};
        if (distance(kind, space, x, x) != 0.0) return {false, "d(x, x) != 0"};
        if (kind == DistanceKind::Gower && (dxy < 0.0 || dxy > 1.0 + tol)) return {false, "gower outside [0, 1]"};
      }
      const Scalar eh = mixed_eh(space, x, y);
      if (space.n_discrete() == 0 && std::abs(eh - ref_euclid(x.cont, y.cont) / D) > tol)
        return {false, "pure-continuous mixed_eh != d_E / D"};
      if (space.n_continuous() == 0 && std::abs(eh - ref_hamming(x.disc, y.disc) / D) > tol)
        return {false, "pure-discrete mixed_eh != d_H / D"};
      if (std::abs(eh - (ref_euclid(x.cont, y.cont) + ref_hamming(x.disc, y.disc)) / D) > tol)
        return {false, "mixed_eh != (d_E + d_H) / D"};
      checked += 1;
    }
  }
  return {true, fmt("%ld pairs over 3 spaces", checked)};
}

// 4. Beta-step copy law.
Outcome beta_step_law() {
  SearchSpace space({Categorical{{"a", "b", "c"}}, IntegerRange{0, 9}, Categorical{{"u", "v"}}, IntegerRange{-3, 3}});
  DiscVector xi(4), xj(4);
  xi << 0, 5, 1, -3;
  xj << 2, 5, 0, 3;  // component 1 agrees
  Rng rng(99);
  std::string detail;
  bool ok = true;
  for (Scalar p : {0.0, 0.5, 1.0}) {
    long copies = 0, differing = 0;
    const int trials = 10'000;
    for (int t = 0; t < trials; ++t) {
      const auto out = beta_step(space, xi, xj, p, rng);
      if (out[1] != xi[1]) return {false, "agreeing component changed"};
      for (int k : {0, 2, 3}) {
        if (out[k] != xi[k] && out[k] != xj[k]) return {false, "component outside {xi, xj}"};
        copies += out[k] == xj[k];
        ++differing;
      }
    }
    const Scalar freq = static_cast<Scalar>(copies) / static_cast<Scalar>(differing);
    ok = ok && std::abs(freq - p) <= 0.02;
    detail += fmt("p=%.1f freq=%.4f ", p, freq);
  }
  return {ok, detail};
}

// 5. Sigmoid midpoint and monotonicity.
Outcome sigmoid_midpoint() {
  for (Scalar k : {0.5, 1.0, 5.0, 20.0}) {
    for (Scalar init : {0.4, 1.0, 2.0, 3.3}) {
      if (replacement_prob(init / 2.0, init, k, true) != 0.5) return {false, fmt("midpoint != 0.5 at k=%g", k)};
      Scalar prev = replacement_prob(0.0, init, k, true);
      for (int i = 1; i <= 200; ++i) {
        const Scalar v = replacement_prob(init * i / 200.0, init, k, true);
        if (!(v > prev)) return {false, fmt("not strictly increasing at k=%g", k)};
        prev = v;
      }
    }
    Scalar prev = replacement_prob(0.01, 0.0, k, false);
    for (int i = 2; i <= 200; ++i) {
      const Scalar v = replacement_prob(0.01 * i, 0.0, k, false);
      if (!(v > prev)) return {false, "constant-mode sigmoid not increasing"};
      prev = v;
    }
  }
  return {true, "exactly 0.5 at alpha_init/2 for k in {0.5, 1, 5, 20}"};
}

// 6. Stats oracle equivalence.
Outcome stats_oracle() {
  constexpr Scalar tol = 1e-10;
  Scalar worst = 0.0;
  for (const auto& ref : test::references()) {
    const auto kw = stats::kruskal_wallis(ref.samples);
    worst = std::max({worst, std::abs(kw.h - ref.h), std::abs(kw.p - ref.p)});
    const auto pairs = stats::dunn_pairwise(ref.samples);
    if (pairs.size() != ref.pairs.size()) return {false, "pair count mismatch"};
    std::vector<Scalar> raw;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      worst = std::max({worst, std::abs(pairs[k].z - ref.pairs[k].z), std::abs(pairs[k].raw_p - ref.pairs[k].raw)});
      raw.push_back(pairs[k].raw_p);
    }
    const auto adj = stats::holm_adjust(raw);
    for (std::size_t k = 0; k < adj.size(); ++k) worst = std::max(worst, std::abs(adj[k] - ref.pairs[k].holm));
  }
  const std::vector<Scalar> hand{0.01, 0.02, 0.04};
  const auto h = stats::holm_adjust(hand);
  worst = std::max({worst, std::abs(h[0] - 0.03), std::abs(h[1] - 0.04), std::abs(h[2] - 0.04)});
  return {worst <= tol, fmt("5 datasets + Holm hand case, max abs deviation %.3g", worst)};
}

// 7. Engineering spot values.
Outcome spot_values() {
  const Scalar v = vessel_cost(1, 1, 50, 100);
  const Scalar b = beam_cost(1, 1, 1, 1);
  const Scalar c = spring_cost(0.5, 1.5, 10);
  const bool ok = std::abs(v - 8865.86) <= 1e-3 && std::abs(b - 1.82636) <= 1e-3 && std::abs(c - 4.5) <= 1e-3;
  return {ok, fmt("vessel %.6f, beam %.6f, csd %.6f", v, b, c)};
}

// 8. Engineering end-to-end.
Outcome engineering() {
  const auto vessel = make_vessel();
  int feasible_runs = 0;
  std::vector<Scalar> vessel_best;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto t = harness::run_algorithm({"famv-g", {}}, vessel, 10'000, seed);
    feasible_runs += feasible(vessel.constraints(t.final.solution), 1e-6) ? 1 : 0;
    vessel_best.push_back(t.best());
  }
  const Scalar vessel_mean = mean_of(vessel_best);
  const bool same_order = std::abs(std::log10(vessel_mean) - std::log10(vessel.reference_optimum)) < 1.0;

  const auto beam = make_beam();
  Scalar worst_cv = 0.0;
  std::string worst_name;
  for (const auto& name : harness::algorithm_names()) {
    if (name == "fa" || name == "ga") continue;
    std::vector<Scalar> best;
    for (std::uint64_t seed = 1; seed <= 30; ++seed)
      best.push_back(harness::run_algorithm({name, {}}, beam, 10'000, seed).best());
    const Scalar cv = stats::sample_std(best) / mean_of(best);
    if (cv > worst_cv) worst_cv = cv, worst_name = name;
  }
  const bool ok = feasible_runs >= 27 && same_order && worst_cv < 0.5;
  return {ok, fmt("vessel FAmv_G feasible %d/30, mean %.6g (best known %.6g); beam worst std/mean %.3g (%s)",
                  feasible_runs, vessel_mean, vessel.reference_optimum, worst_cv, worst_name.c_str())};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 9. Byte-identical summaries.
Outcome reproducibility(const fs::path& root) {
  harness::ExperimentSpec spec;
  spec.problems = {"rosenbrock:10", "vessel", "ackley:10"};
  for (const auto& a : harness::algorithm_names()) spec.algorithms.push_back({a, {}});
  spec.runs = 3;
  spec.budget = 1500;
  spec.base_seed = 7;
  spec.out_dir = root / "repro_a";
  spec.threads = 1;
  harness::run_experiment(spec);
  spec.out_dir = root / "repro_b";
  spec.threads = 3;
  harness::run_experiment(spec);
  const auto a = slurp(root / "repro_a" / "summary.csv");
  const auto b = slurp(root / "repro_b" / "summary.csv");
  return {!a.empty() && a == b, fmt("%zu-byte summary, identical: %s", a.size(), a == b ? "yes" : "no")};
}

// 10. Monotone traces within budget across the full grid.
Outcome monotone_grid(const fs::path& root) {
  harness::ExperimentSpec spec;
  spec.problems = problem_names();
  for (const auto& a : harness::algorithm_names()) spec.algorithms.push_back({a, {}});
  spec.runs = 5;
  spec.budget = 5000;
  spec.stride = 100;
  spec.out_dir = root / "grid";
  const auto result = harness::run_experiment(spec);
  if (!result.errors.empty()) return {false, "run errors: " + result.errors.front()};

  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(spec.out_dir / "traces")) {
    ++files;
    std::ifstream in(entry.path());
    std::string line;
    std::getline(in, line);
    if (line != "fe,best") return {false, "bad header in " + entry.path().filename().string()};
    long long prev_fe = 0, fe = 0;
    double prev_best = INFINITY;
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      fe = std::stoll(line.substr(0, comma));
      const double best = std::stod(line.substr(comma + 1));
      if (fe <= prev_fe) return {false, "fe not increasing in " + entry.path().filename().string()};
      if (best > prev_best) return {false, "best increased in " + entry.path().filename().string()};
      prev_fe = fe;
      prev_best = best;
    }
    if (fe > *spec.budget) return {false, "final fe over budget in " + entry.path().filename().string()};
  }
  const std::size_t expected = spec.problems.size() * spec.algorithms.size() * 5;
  for (const auto& r : result.records)
    if (r.fe > r.budget) return {false, "summary fe over budget"};
  return {files == expected, fmt("%zu traces checked (expected %zu)", files, expected)};
}

}  // namespace

int main(int argc, char** argv) {
  // Criteria listed here still print FAIL; the exit code only reflects the
  // others. An expected failure that passes is reported so the list stays honest.
  std::vector<std::size_t> expected_failures;
  CLI::App app{"FAmv acceptance suite"};
  app.add_option("--expect-fail", expected_failures, "Criterion numbers known not to pass");
  CLI11_PARSE(app, argc, argv);
  auto expected = [&](std::size_t n) {
    return std::find(expected_failures.begin(), expected_failures.end(), n) != expected_failures.end();
  };

  const fs::path root = fs::temp_directory_path() / "famv_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"FAmv_H beats FA by 10x on mixed sphere", famv_beats_fa},
      {"adaptive schedule endpoints", schedule_endpoints},
      {"distance axioms", distance_axioms},
      {"beta-step copy law", beta_step_law},
      {"sigmoid midpoint", sigmoid_midpoint},
      {"stats oracle equivalence", stats_oracle},
      {"engineering spot values", spot_values},
      {"engineering end-to-end", engineering},
      {"reproducible summaries", [&] { return reproducibility(root); }},
      {"monotone traces within budget", [&] { return monotone_grid(root); }},
  };

  int failures = 0;
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool xfail = expected(i + 1);
    std::printf("%s [%zu] %s: %s (%.1fs)%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs,
                xfail ? (o.pass ? " [listed as expected failure but passed]" : " [expected failure]") : "");
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
    unexpected += (o.pass == xfail) ? 1 : 0;
  }
  fs::remove_all(root);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return unexpected == 0 ? 0 : 1;
}
