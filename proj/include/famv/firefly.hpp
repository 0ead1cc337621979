#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "famv/core.hpp"
#include "famv/distance.hpp"
#include "famv/run_trace.hpp"

namespace famv {

inline constexpr Scalar kAlphaFloor = 0.01;
inline constexpr Scalar kGammaFloor = 0.01;

/**
 * Settings for FAmv and the classical FA baseline. With an adaptive flag set,
 * `alpha`/`gamma` hold the initial value of the schedule.
 */
struct FireflyConfig {
  std::int64_t pop_size = 25;
  Scalar beta0 = 1.5;
  Scalar alpha = 1.5;
  Scalar gamma = 0.1;
  Scalar k = 1.0;
  DistanceKind distance = DistanceKind::MixedEuclideanHamming;
  bool adapt_alpha = false;
  bool adapt_gamma = false;
  std::int64_t max_fe = 100'000;
  std::uint64_t seed = 0;

  /// Throws ConfigError on out-of-range settings.
  void validate() const;
  std::string summary() const;
};

/// beta0 * exp(-gamma r^2)
inline Scalar attractiveness(Scalar beta0, Scalar gamma, Scalar r) { return beta0 * std::exp(-gamma * r * r); }

/// Per-component copy probability of the discrete beta-step.
inline Scalar discrete_attraction_prob(Scalar gamma, Scalar r) { return std::exp(-gamma * r * r); }

/// xi + beta (xj - xi) + alpha (u - 1/2), fresh u per component. Not clamped.
ContVector continuous_move(const ContVector& xi, const ContVector& xj, Scalar beta, Scalar alpha, Rng& rng);

/// Copies each differing component of xj into xi with probability `prob`.
DiscVector beta_step(const SearchSpace& space, const DiscVector& xi, const DiscVector& xj, Scalar prob, Rng& rng);

/// INT(x + alpha * eps), eps ~ U[-1, 1], rounded half away from zero and clamped to the range.
std::int64_t alpha_step_integer(const IntegerRange& dim, std::int64_t x, Scalar alpha, Rng& rng);

/// With probability p_alpha, resample the index uniformly over the whole value set.
std::int64_t alpha_step_categorical(const Categorical& dim, std::int64_t x, Scalar p_alpha, Rng& rng);

/// Alpha-step over every discrete component of a solution.
DiscVector alpha_step(const SearchSpace& space, DiscVector x, Scalar alpha, Scalar p_alpha, Rng& rng);

/**
 * Sigmoid map from alpha to the categorical replacement probability.
 * Adaptive: 1 / (1 + exp(-k (alpha - alpha_init / 2))).
 * Constant: 1 / (1 + exp(-k alpha / 2)).
 */
Scalar replacement_prob(Scalar alpha, Scalar alpha_init, Scalar k, bool adaptive);

struct AdaptedParameters {
  Scalar alpha;
  Scalar gamma;
};

/// Linear decay with the consumed budget fraction, floored at 0.01.
AdaptedParameters adapt_parameters(Scalar alpha_init, Scalar gamma_init, const EvaluationBudget& budget);
AdaptedParameters adapt_parameters(Scalar alpha_init, Scalar gamma_init, Scalar progress);

RunTrace run_famv(const Problem& problem, const FireflyConfig& config);

/**
 * Textbook FA over the relaxed space: integer dims become [lo - 0.5, hi + 0.5]
 * and categorical dims become [-0.5, |values| - 0.5]; positions stay
 * continuous and are rounded to the nearest admissible value only when
 * evaluated. Stops early once a full sweep moves no firefly.
 */
RunTrace run_classical_fa(const Problem& problem, const FireflyConfig& config);

/// Relaxed all-continuous counterpart of a mixed space.
SearchSpace relax(const SearchSpace& space);
/// Maps a point of relax(space) back onto space by nearest-value rounding.
MixedSolution decode_relaxed(const SearchSpace& space, const ContVector& relaxed);

}  // namespace famv
