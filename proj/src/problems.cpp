#include "famv/problems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace famv {

Scalar penalize(Scalar raw, std::span<const Scalar> g, const PenaltySpec& spec) {
  Scalar magnitude = 0.0;
  std::int64_t violated = 0;
  for (Scalar v : g) {
    if (v > 0.0) {
      magnitude += v;
      ++violated;
    }
  }
  Scalar penalty = spec.coefficient * magnitude;
  if (spec.mode == PenaltyMode::MagnitudePlusCount) penalty += spec.coefficient * static_cast<Scalar>(violated);
  return raw + penalty;
}

// ---------------------------------------------------------------- vessel

Scalar vessel_cost(Scalar d_s, Scalar d_h, Scalar r, Scalar L) {
  return 0.6224 * r * d_s * L + 1.7781 * d_h * r * r + 3.1661 * d_s * d_s * L + 19.84 * d_s * d_s * r;
}

std::vector<Scalar> vessel_constraints(Scalar d_s, Scalar d_h, Scalar r, Scalar L) {
  constexpr Scalar pi = std::numbers::pi;
  return {
      -d_s + 0.0193 * r,
      -d_h + 0.00954 * r,
      -pi * r * r * L - (4.0 / 3.0) * pi * r * r * r + 1296000.0,
      L - 240.0,
  };
}

namespace {

struct VesselPoint {
  Scalar d_s, d_h, r, L;
};

VesselPoint vessel_point(const SearchSpace& space, const MixedSolution& x) {
  check_conforms(space, x);
  return {kThicknessStep * static_cast<Scalar>(x.disc[0]), kThicknessStep * static_cast<Scalar>(x.disc[1]), x.cont[0],
          x.cont[1]};
}

}  // namespace

Problem make_vessel(Scalar reference, PenaltySpec penalty) {
  SearchSpace space({IntegerRange{1, 99}, IntegerRange{1, 99}, Continuous{10.0, 200.0}, Continuous{10.0, 200.0}});
  auto objective = [space, penalty](const MixedSolution& x) {
    const auto p = vessel_point(space, x);
    return penalize(vessel_cost(p.d_s, p.d_h, p.r, p.L), vessel_constraints(p.d_s, p.d_h, p.r, p.L), penalty);
  };
  auto constraints = [space](const MixedSolution& x) {
    const auto p = vessel_point(space, x);
    return vessel_constraints(p.d_s, p.d_h, p.r, p.L);
  };
  return Problem{"vessel", space, objective, constraints, reference};
}

// ---------------------------------------------------------------- beam

Scalar beam_cost(Scalar x1, Scalar x2, Scalar x3, Scalar x4) {
  return 1.10471 * x1 * x1 * x2 + 0.04811 * x3 * x4 * (14.0 + x2);
}

std::vector<Scalar> beam_constraints(Scalar x1, Scalar x2, Scalar x3, Scalar x4, const BeamConstants& k) {
  const Scalar P = k.load;
  const Scalar L = k.arm;
  const Scalar E = k.young;
  const Scalar G = k.shear_modulus;

  const Scalar tau_p = P / (std::sqrt(2.0) * x1 * x2);
  const Scalar moment = P * (L + x2 / 2.0);
  const Scalar half_sum = (x1 + x3) / 2.0;
  const Scalar R = std::sqrt(x2 * x2 / 4.0 + half_sum * half_sum);
  const Scalar J = 2.0 * (std::sqrt(2.0) * x1 * x2 * (x2 * x2 / 12.0 + half_sum * half_sum));
  const Scalar tau_pp = moment * R / J;
  const Scalar tau = std::sqrt(tau_p * tau_p + 2.0 * tau_p * tau_pp * x2 / (2.0 * R) + tau_pp * tau_pp);
  const Scalar sigma = 6.0 * P * L / (x4 * x3 * x3);
  const Scalar delta = 4.0 * P * L * L * L / (E * x3 * x3 * x3 * x4);
  const Scalar p_c = 4.013 * E * std::sqrt(x3 * x3 * std::pow(x4, 6) / 36.0) / (L * L) *
                     (1.0 - x3 / (2.0 * L) * std::sqrt(E / (4.0 * G)));

  return {
      tau - k.tau_max,
      sigma - k.sigma_max,
      x1 - x4,
      0.10471 * x1 * x1 + 0.04811 * x3 * x4 * (14.0 + x2) - 5.0,
      0.125 - x1,
      delta - k.delta_max,
      P - p_c,
  };
}

Problem make_beam(Scalar reference, PenaltySpec penalty) {
  SearchSpace space({Continuous{0.1, 2.0}, Continuous{0.1, 10.0}, Continuous{0.1, 10.0}, Continuous{0.1, 2.0}});
  auto objective = [space, penalty](const MixedSolution& x) {
    check_conforms(space, x);
    const auto& c = x.cont;
    return penalize(beam_cost(c[0], c[1], c[2], c[3]), beam_constraints(c[0], c[1], c[2], c[3]), penalty);
  };
  auto constraints = [space](const MixedSolution& x) {
    check_conforms(space, x);
    return beam_constraints(x.cont[0], x.cont[1], x.cont[2], x.cont[3]);
  };
  return Problem{"beam", space, objective, constraints, reference};
}

// ---------------------------------------------------------------- coil spring

Scalar spring_cost(Scalar d, Scalar coil, Scalar n) { return (n + 2.0) * d * d * coil; }

std::vector<Scalar> spring_constraints(Scalar d, Scalar coil, Scalar n, const SpringConstants& k) {
  constexpr Scalar pi = std::numbers::pi;
  const Scalar C = coil / d;
  const Scalar c_f = (4.0 * C - 1.0) / (4.0 * C - 4.0) + 0.615 / C;
  const Scalar stiffness = k.shear_modulus * std::pow(d, 4) / (8.0 * n * std::pow(coil, 3));
  const Scalar delta_max = k.p_max / stiffness;
  const Scalar delta_load = k.p_load / stiffness;

  return {
      8.0 * c_f * k.p_max * coil / (pi * d * d * d) - k.shear_stress,
      delta_max + 1.05 * (n + 2.0) * d - k.free_length,
      k.d_min - d,
      (d + coil) - k.outer_max,
      3.0 - C,
      delta_max - k.delta_pm,
      k.delta_w - delta_max + delta_load,
  };
}

Problem make_spring(Scalar reference, PenaltySpec penalty) {
  SearchSpace space({Continuous{0.1, 1.0}, Continuous{0.25, 3.0}, IntegerRange{1, 70}});
  auto objective = [space, penalty](const MixedSolution& x) {
    check_conforms(space, x);
    const Scalar n = static_cast<Scalar>(x.disc[0]);
    return penalize(spring_cost(x.cont[0], x.cont[1], n), spring_constraints(x.cont[0], x.cont[1], n), penalty);
  };
  auto constraints = [space](const MixedSolution& x) {
    check_conforms(space, x);
    return spring_constraints(x.cont[0], x.cont[1], static_cast<Scalar>(x.disc[0]));
  };
  return Problem{"csd", space, objective, constraints, reference};
}

// ---------------------------------------------------------------- synthetic

const std::vector<BenchmarkInfo>& benchmark_catalog() {
  static const std::vector<BenchmarkInfo> catalog{
      {Benchmark::Sphere, "sphere", -100.0, 100.0},
      {Benchmark::Elliptic, "elliptic", -100.0, 100.0},
      {Benchmark::Rosenbrock, "rosenbrock", -30.0, 30.0},
      {Benchmark::Rastrigin, "rastrigin", -5.12, 5.12},
      {Benchmark::Ackley, "ackley", -32.768, 32.768},
      {Benchmark::Griewank, "griewank", -600.0, 600.0},
      {Benchmark::Schwefel, "schwefel", -100.0, 100.0},
  };
  return catalog;
}

Scalar benchmark_value(Benchmark id, const ContVector& z) {
  constexpr Scalar two_pi = 2.0 * std::numbers::pi;
  const auto n = z.size();
  switch (id) {
    case Benchmark::Sphere:
      return z.squaredNorm();
    case Benchmark::Elliptic: {
      Scalar sum = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const Scalar expo = n > 1 ? static_cast<Scalar>(i) / static_cast<Scalar>(n - 1) : 0.0;
        sum += std::pow(1e6, expo) * z[i] * z[i];
      }
      return sum;
    }
    case Benchmark::Rosenbrock: {
      // Shifted so the minimum sits at z = 0.
      Scalar sum = 0.0;
      for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const Scalar a = z[i] + 1.0;
        const Scalar b = z[i + 1] + 1.0;
        sum += 100.0 * (a * a - b) * (a * a - b) + (a - 1.0) * (a - 1.0);
      }
      return sum;
    }
    case Benchmark::Rastrigin: {
      Scalar sum = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) sum += z[i] * z[i] - 10.0 * std::cos(two_pi * z[i]) + 10.0;
      return sum;
    }
    case Benchmark::Ackley: {
      const Scalar mean_sq = z.squaredNorm() / static_cast<Scalar>(n);
      Scalar mean_cos = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) mean_cos += std::cos(two_pi * z[i]);
      mean_cos /= static_cast<Scalar>(n);
      // Grouped so that both terms vanish exactly at z = 0.
      return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(mean_sq))) + (std::exp(1.0) - std::exp(mean_cos));
    }
    case Benchmark::Griewank: {
      Scalar prod = 1.0;
      for (Eigen::Index i = 0; i < n; ++i) prod *= std::cos(z[i] / std::sqrt(static_cast<Scalar>(i + 1)));
      return z.squaredNorm() / 4000.0 - prod + 1.0;
    }
    case Benchmark::Schwefel: {
      // Schwefel 1.2: sum of squared prefix sums.
      Scalar sum = 0.0;
      Scalar prefix = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        prefix += z[i];
        sum += prefix * prefix;
      }
      return sum;
    }
  }
  return 0.0;
}

namespace {

const BenchmarkInfo& lookup_benchmark(std::string_view name) {
  for (const auto& info : benchmark_catalog())
    if (info.name == name) return info;
  throw ConfigError("unknown benchmark function '" + std::string(name) + "'");
}

void check_dim(int dim) {
  if (dim < 2 || dim % 2 != 0) throw ConfigError("synthetic dimension must be even and >= 2");
}

}  // namespace

ContVector synthetic_shift(std::string_view name, int dim, std::uint64_t shift_seed) {
  const auto& info = lookup_benchmark(name);
  check_dim(dim);
  const int half = dim / 2;
  Rng rng(shift_seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(info.id) + 1)));
  // Shifts stay within 80% of the domain so every optimum is interior.
  const Scalar lo = 0.8 * info.lo;
  const Scalar hi = 0.8 * info.hi;
  ContVector o(dim);
  for (int k = 0; k < dim; ++k) {
    const Scalar v = rng.uniform(lo, hi);
    o[k] = k < half ? v : static_cast<Scalar>(round_half_away(v));
  }
  return o;
}

Problem synthetic(std::string_view name, int dim, std::uint64_t shift_seed) {
  const auto& info = lookup_benchmark(name);
  const ContVector shift = synthetic_shift(name, dim, shift_seed);
  const int half = dim / 2;
  std::vector<DimensionSpec> dims;
  dims.reserve(static_cast<std::size_t>(dim));
  for (int k = 0; k < half; ++k) dims.emplace_back(Continuous{info.lo, info.hi});
  const IntegerRange ints{static_cast<std::int64_t>(std::ceil(info.lo)), static_cast<std::int64_t>(std::floor(info.hi))};
  for (int k = half; k < dim; ++k) dims.emplace_back(ints);
  SearchSpace space(std::move(dims));

  const Benchmark id = info.id;
  auto objective = [space, shift, id](const MixedSolution& x) {
    check_shape(space, x);
    ContVector z(shift.size());
    z.head(x.cont.size()) = x.cont - shift.head(x.cont.size());
    z.tail(x.disc.size()) = x.disc.cast<Scalar>() - shift.tail(x.disc.size());
    return benchmark_value(id, z);
  };
  std::string full = std::string(info.name);
  if (dim != 50) full += ":" + std::to_string(dim);
  return Problem{full, space, objective, {}, 0.0};
}

MixedSolution synthetic_optimum(std::string_view name, int dim, std::uint64_t shift_seed) {
  const ContVector shift = synthetic_shift(name, dim, shift_seed);
  const int half = dim / 2;
  MixedSolution x{shift.head(half), DiscVector(half)};
  for (int k = 0; k < half; ++k) x.disc[k] = static_cast<std::int64_t>(shift[half + k]);
  return x;
}

Problem make_problem(std::string_view name) {
  if (name == "vessel") return make_vessel();
  if (name == "beam") return make_beam();
  if (name == "csd") return make_spring();
  int dim = 50;
  std::string_view base = name;
  if (const auto colon = name.find(':'); colon != std::string_view::npos) {
    base = name.substr(0, colon);
    const auto digits = name.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dim);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw ConfigError("bad dimension suffix in problem name '" + std::string(name) + "'");
  }
  const auto& catalog = benchmark_catalog();
  if (std::none_of(catalog.begin(), catalog.end(), [&](const auto& info) { return info.name == base; }))
    throw ConfigError("unknown problem '" + std::string(name) + "'");
  return synthetic(base, dim);
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& info : benchmark_catalog()) names.emplace_back(info.name);
  names.insert(names.end(), {"vessel", "beam", "csd"});
  return names;
}

Scalar absolute_error(const Problem& problem, Scalar achieved) { return std::abs(achieved - problem.reference_optimum); }

}  // namespace famv
