#include "famv/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace famv {

namespace {

void validate(const DimensionSpec& d, std::size_t k) {
  const auto where = " (dimension " + std::to_string(k) + ")";
  if (const auto* c = std::get_if<Continuous>(&d)) {
    if (!std::isfinite(c->lo) || !std::isfinite(c->hi) || !(c->lo < c->hi))
      throw StructuralError("continuous bounds must be finite with lo < hi" + where);
  } else if (const auto* r = std::get_if<IntegerRange>(&d)) {
    if (r->lo > r->hi) throw StructuralError("integer range needs lo <= hi" + where);
  } else {
    const auto& values = std::get<Categorical>(d).values;
    if (values.empty()) throw StructuralError("categorical value set is empty" + where);
    std::set<std::string> seen(values.begin(), values.end());
    if (seen.size() != values.size()) throw StructuralError("categorical values must be distinct" + where);
  }
}

}  // namespace

SearchSpace::SearchSpace(std::vector<DimensionSpec> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw StructuralError("search space needs at least one dimension");
  slot_.resize(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    validate(dims_[k], k);
    if (is_continuous(dims_[k])) {
      slot_[k] = cont_dims_.size();
      cont_dims_.push_back(k);
    } else {
      slot_[k] = disc_dims_.size();
      disc_dims_.push_back(k);
    }
  }
}

const Continuous& SearchSpace::continuous(std::size_t k) const {
  return std::get<Continuous>(dims_[cont_dims_.at(k)]);
}

const DimensionSpec& SearchSpace::discrete(std::size_t k) const { return dims_[disc_dims_.at(k)]; }

Scalar SearchSpace::range(std::size_t k) const {
  const auto& c = continuous(k);
  return c.hi - c.lo;
}

std::int64_t SearchSpace::cardinality(std::size_t k) const {
  const auto& d = discrete(k);
  if (const auto* r = std::get_if<IntegerRange>(&d)) return r->hi - r->lo + 1;
  return static_cast<std::int64_t>(std::get<Categorical>(d).values.size());
}

void check_shape(const SearchSpace& space, const MixedSolution& sol) {
  if (static_cast<std::size_t>(sol.cont.size()) != space.n_continuous() ||
      static_cast<std::size_t>(sol.disc.size()) != space.n_discrete())
    throw StructuralError("solution shape (" + std::to_string(sol.cont.size()) + "+" +
                          std::to_string(sol.disc.size()) + ") does not match search space (" +
                          std::to_string(space.n_continuous()) + "+" + std::to_string(space.n_discrete()) + ")");
}

bool conforms(const SearchSpace& space, const MixedSolution& sol) {
  if (static_cast<std::size_t>(sol.cont.size()) != space.n_continuous() ||
      static_cast<std::size_t>(sol.disc.size()) != space.n_discrete())
    return false;
  for (std::size_t k = 0; k < space.n_continuous(); ++k) {
    const auto& c = space.continuous(k);
    const Scalar v = sol.cont[static_cast<Eigen::Index>(k)];
    if (!(v >= c.lo && v <= c.hi)) return false;
  }
  for (std::size_t k = 0; k < space.n_discrete(); ++k) {
    const auto v = sol.disc[static_cast<Eigen::Index>(k)];
    if (const auto* r = std::get_if<IntegerRange>(&space.discrete(k))) {
      if (v < r->lo || v > r->hi) return false;
    } else if (v < 0 || v >= space.cardinality(k)) {
      return false;
    }
  }
  return true;
}

void check_conforms(const SearchSpace& space, const MixedSolution& sol) {
  check_shape(space, sol);
  if (!conforms(space, sol)) throw StructuralError("solution component out of its dimension's domain");
}

std::string discrete_label(const SearchSpace& space, std::size_t k, std::int64_t value) {
  if (const auto* c = std::get_if<Categorical>(&space.discrete(k)))
    return c->values.at(static_cast<std::size_t>(value));
  return std::to_string(value);
}

std::uint64_t Rng::index(std::uint64_t n) {
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t word = engine_();
  while (word < threshold) word = engine_();
  return word % n;
}

MixedSolution random_solution(const SearchSpace& space, Rng& rng) {
  MixedSolution sol{ContVector(static_cast<Eigen::Index>(space.n_continuous())),
                    DiscVector(static_cast<Eigen::Index>(space.n_discrete()))};
  for (std::size_t k = 0; k < space.n_continuous(); ++k) {
    const auto& c = space.continuous(k);
    sol.cont[static_cast<Eigen::Index>(k)] = std::min(rng.uniform(c.lo, c.hi), c.hi);
  }
  for (std::size_t k = 0; k < space.n_discrete(); ++k) {
    const auto offset = static_cast<std::int64_t>(rng.index(static_cast<std::uint64_t>(space.cardinality(k))));
    if (const auto* r = std::get_if<IntegerRange>(&space.discrete(k)))
      sol.disc[static_cast<Eigen::Index>(k)] = r->lo + offset;
    else
      sol.disc[static_cast<Eigen::Index>(k)] = offset;
  }
  return sol;
}

MixedSolution clamp(const SearchSpace& space, MixedSolution sol) {
  check_shape(space, sol);
  for (std::size_t k = 0; k < space.n_continuous(); ++k) {
    const auto& c = space.continuous(k);
    auto& v = sol.cont[static_cast<Eigen::Index>(k)];
    v = std::clamp(v, c.lo, c.hi);
  }
  for (std::size_t k = 0; k < space.n_discrete(); ++k) {
    if (const auto* r = std::get_if<IntegerRange>(&space.discrete(k))) {
      auto& v = sol.disc[static_cast<Eigen::Index>(k)];
      v = std::clamp(v, r->lo, r->hi);
    }
  }
  return sol;
}

EvaluationBudget::EvaluationBudget(std::int64_t max_fe) : max_fe_(max_fe) {
  if (max_fe <= 0) throw ConfigError("evaluation budget must be positive");
}

bool EvaluationBudget::consume(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("consume needs n >= 1");
  if (consumed_ + n > max_fe_) return false;
  consumed_ += n;
  return true;
}

}  // namespace famv
