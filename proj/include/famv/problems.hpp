#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "famv/core.hpp"

namespace famv {

enum class PenaltyMode { MagnitudeOnly, MagnitudePlusCount };

struct PenaltySpec {
  Scalar coefficient = 1e6;
  PenaltyMode mode = PenaltyMode::MagnitudeOnly;
};

/// raw + M sum max(0, g_i), plus M per violated constraint in MagnitudePlusCount mode.
Scalar penalize(Scalar raw, std::span<const Scalar> g, const PenaltySpec& spec);

inline bool feasible(std::span<const Scalar> g, Scalar tol = 0.0) {
  for (Scalar v : g)
    if (v > tol) return false;
  return true;
}

// Pressure vessel. Thicknesses are multiples of this step.
inline constexpr Scalar kThicknessStep = 0.0625;

Scalar vessel_cost(Scalar d_s, Scalar d_h, Scalar r, Scalar L);
std::vector<Scalar> vessel_constraints(Scalar d_s, Scalar d_h, Scalar r, Scalar L);

// Welded beam.
struct BeamConstants {
  Scalar load = 6000.0;       // P
  Scalar arm = 14.0;          // L
  Scalar young = 30e6;        // E
  Scalar shear_modulus = 12e6;  // G
  Scalar tau_max = 13600.0;
  Scalar sigma_max = 30000.0;
  Scalar delta_max = 0.25;
};

Scalar beam_cost(Scalar x1, Scalar x2, Scalar x3, Scalar x4);
std::vector<Scalar> beam_constraints(Scalar x1, Scalar x2, Scalar x3, Scalar x4, const BeamConstants& k = {});

// Coil spring.
struct SpringConstants {
  Scalar p_max = 1000.0;       // maximum working load
  Scalar p_load = 300.0;       // preload
  Scalar shear_stress = 189000.0;  // S
  Scalar free_length = 14.0;   // L_free
  Scalar delta_pm = 6.0;       // deflection limit
  Scalar delta_w = 1.25;       // working deflection
  Scalar d_min = 0.2;
  Scalar outer_max = 3.0;
  Scalar shear_modulus = 11.5e6;
};

Scalar spring_cost(Scalar d, Scalar coil, Scalar n);
std::vector<Scalar> spring_constraints(Scalar d, Scalar coil, Scalar n, const SpringConstants& k = {});

/// Best-known objective values used as AE references for the engineering problems.
struct EngineeringReferences {
  Scalar vessel = 6059.714335;
  Scalar beam = 1.724852;
  Scalar spring = 1.077473;  // 2.658559 in the pi^2/4-scaled cost
};

/// x = (d_s, d_h, r, L) with d_s, d_h as IntegerRange multipliers n in [1, 99], d = 0.0625 n.
Problem make_vessel(Scalar reference = EngineeringReferences{}.vessel, PenaltySpec penalty = {});
/// x = (x1, x2, x3, x4), all continuous.
Problem make_beam(Scalar reference = EngineeringReferences{}.beam,
                  PenaltySpec penalty = {1e6, PenaltyMode::MagnitudePlusCount});
/// x = (d, D, N) with N an IntegerRange.
Problem make_spring(Scalar reference = EngineeringReferences{}.spring, PenaltySpec penalty = {});

/// Canonical benchmark families, evaluated on z = x - o.
enum class Benchmark { Sphere, Elliptic, Rosenbrock, Rastrigin, Ackley, Griewank, Schwefel };

struct BenchmarkInfo {
  Benchmark id;
  std::string_view name;
  Scalar lo;
  Scalar hi;
};

const std::vector<BenchmarkInfo>& benchmark_catalog();

/// Raw function value at z (minimum 0 at z = 0).
Scalar benchmark_value(Benchmark id, const ContVector& z);

/**
 * Mixed-variable benchmark: the first dim/2 components are continuous over
 * the family's domain, the remaining ones are integers over the integer points
 * of that domain. The optimum shift o is drawn from a fixed seed and its
 * integer half is rounded, so f(o) is exactly the family minimum.
 */
Problem synthetic(std::string_view name, int dim = 50, std::uint64_t shift_seed = 2013);

/// Shift vector of a synthetic instance, in declared-dimension order.
ContVector synthetic_shift(std::string_view name, int dim = 50, std::uint64_t shift_seed = 2013);

/// The solution placed exactly at the shifted optimum.
MixedSolution synthetic_optimum(std::string_view name, int dim = 50, std::uint64_t shift_seed = 2013);

/**
 * Registry lookup: "vessel", "beam", "csd", or a benchmark family name with an
 * optional ":<dim>" suffix (default 50). Throws ConfigError on unknown names.
 */
Problem make_problem(std::string_view name);
std::vector<std::string> problem_names();

Scalar absolute_error(const Problem& problem, Scalar achieved);

}  // namespace famv
