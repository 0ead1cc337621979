#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace famv {

using Scalar = double;
using ContVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
// Integer value for IntegerRange dims, value-set index for Categorical dims.
using DiscVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Thrown when shapes or domains do not line up (wrong lengths, bad bounds).
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown for unknown names or invalid user-supplied settings.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Continuous {
  Scalar lo;
  Scalar hi;
};

struct IntegerRange {
  std::int64_t lo;
  std::int64_t hi;
};

struct Categorical {
  std::vector<std::string> values;
};

using DimensionSpec = std::variant<Continuous, IntegerRange, Categorical>;

/// Round half away from zero.
inline std::int64_t round_half_away(Scalar v) { return static_cast<std::int64_t>(std::llround(v)); }

inline bool is_continuous(const DimensionSpec& d) { return std::holds_alternative<Continuous>(d); }

/**
 * The mixed domain. Dimensions keep their declaration order, but solutions
 * store all continuous components first and all discrete components second;
 * slot() maps a declared dimension to its position in the matching part.
 */
class SearchSpace {
 public:
  explicit SearchSpace(std::vector<DimensionSpec> dims);

  std::size_t dimension() const { return dims_.size(); }
  std::size_t n_continuous() const { return cont_dims_.size(); }
  std::size_t n_discrete() const { return disc_dims_.size(); }

  const std::vector<DimensionSpec>& dims() const { return dims_; }
  const Continuous& continuous(std::size_t k) const;
  const DimensionSpec& discrete(std::size_t k) const;

  /// hi - lo of the k-th continuous component.
  Scalar range(std::size_t k) const;
  /// Number of admissible values of the k-th discrete component.
  std::int64_t cardinality(std::size_t k) const;

  /// Slot of declared dimension `dim` inside the continuous or discrete part.
  std::size_t slot(std::size_t dim) const { return slot_[dim]; }

 private:
  std::vector<DimensionSpec> dims_;
  std::vector<std::size_t> cont_dims_;
  std::vector<std::size_t> disc_dims_;
  std::vector<std::size_t> slot_;
};

struct MixedSolution {
  ContVector cont;
  DiscVector disc;

  friend bool operator==(const MixedSolution& a, const MixedSolution& b) {
    return a.cont.size() == b.cont.size() && a.disc.size() == b.disc.size() &&
           a.cont == b.cont && a.disc == b.disc;
  }
};

struct Firefly {
  MixedSolution solution;
  Scalar fitness = std::numeric_limits<Scalar>::infinity();
};

/// Throws StructuralError unless `sol` has the space's shape and every component is in bounds.
void check_conforms(const SearchSpace& space, const MixedSolution& sol);
bool conforms(const SearchSpace& space, const MixedSolution& sol);
void check_shape(const SearchSpace& space, const MixedSolution& sol);

/// Symbol of the k-th discrete component (the integer rendered as text for IntegerRange).
std::string discrete_label(const SearchSpace& space, std::size_t k, std::int64_t value);

/**
 * Seeded random source. Uniform draws are derived from raw 64-bit words so a
 * given seed yields the same stream on every standard library.
 */
class Rng {
 public:
  using result_type = std::uint64_t;
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  /// Uniform in [0, 1).
  Scalar uniform() { return static_cast<Scalar>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi].
  Scalar uniform(Scalar lo, Scalar hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform over {0, ..., n-1}; n >= 1.
  std::uint64_t index(std::uint64_t n);
  bool bernoulli(Scalar p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

MixedSolution random_solution(const SearchSpace& space, Rng& rng);

/// Projects continuous and integer components into their bounds; categorical indices untouched.
MixedSolution clamp(const SearchSpace& space, MixedSolution sol);

/// Function-evaluation accounting for one run.
class EvaluationBudget {
 public:
  explicit EvaluationBudget(std::int64_t max_fe);

  std::int64_t consumed() const { return consumed_; }
  std::int64_t max_fe() const { return max_fe_; }
  bool exhausted() const { return consumed_ >= max_fe_; }
  Scalar progress() const { return static_cast<Scalar>(consumed_) / static_cast<Scalar>(max_fe_); }

  /// Charges n evaluations. Returns false, charging nothing, if that would pass max_fe.
  bool consume(std::int64_t n = 1);

 private:
  std::int64_t consumed_ = 0;
  std::int64_t max_fe_;
};

/// A named objective over a search space. Minimization.
struct Problem {
  std::string name;
  SearchSpace space;
  std::function<Scalar(const MixedSolution&)> objective;
  /// Constraint values g(x), feasible iff every entry <= 0. Empty for unconstrained problems.
  std::function<std::vector<Scalar>(const MixedSolution&)> constraints;
  Scalar reference_optimum = 0.0;

  Scalar evaluate(const MixedSolution& x) const { return objective(x); }
};

}  // namespace famv
