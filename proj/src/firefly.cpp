#include "famv/firefly.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace famv {

void FireflyConfig::validate() const {
  if (pop_size < 2) throw ConfigError("firefly population needs at least 2 members");
  if (!(beta0 > 0.0)) throw ConfigError("beta0 must be positive");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(k > 0.0)) throw ConfigError("sigmoid steepness k must be positive");
  if (max_fe < 1) throw ConfigError("max_fe must be positive");
}

std::string FireflyConfig::summary() const {
  std::ostringstream out;
  out << "N=" << pop_size << " beta0=" << beta0 << " alpha=" << alpha << " gamma=" << gamma << " k=" << k
      << " distance=" << to_string(distance) << " adapt_alpha=" << adapt_alpha << " adapt_gamma=" << adapt_gamma
      << " max_fe=" << max_fe << " seed=" << seed;
  return out.str();
}

ContVector continuous_move(const ContVector& xi, const ContVector& xj, Scalar beta, Scalar alpha, Rng& rng) {
  if (xi.size() != xj.size()) throw StructuralError("continuous_move: length mismatch");
  ContVector out(xi.size());
  for (Eigen::Index k = 0; k < xi.size(); ++k) out[k] = xi[k] + beta * (xj[k] - xi[k]) + alpha * (rng.uniform() - 0.5);
  return out;
}

DiscVector beta_step(const SearchSpace& space, const DiscVector& xi, const DiscVector& xj, Scalar prob, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(space.n_discrete());
  if (xi.size() != n || xj.size() != n) throw StructuralError("beta_step: vectors do not match the discrete part");
  DiscVector out = xi;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (xi[k] != xj[k] && rng.bernoulli(prob)) out[k] = xj[k];
  }
  return out;
}

std::int64_t alpha_step_integer(const IntegerRange& dim, std::int64_t x, Scalar alpha, Rng& rng) {
  const Scalar eps = 2.0 * rng.uniform() - 1.0;
  const Scalar moved = static_cast<Scalar>(x) + alpha * eps;
  const Scalar bounded = std::clamp(moved, static_cast<Scalar>(dim.lo), static_cast<Scalar>(dim.hi));
  return std::clamp(round_half_away(bounded), dim.lo, dim.hi);
}

std::int64_t alpha_step_categorical(const Categorical& dim, std::int64_t x, Scalar p_alpha, Rng& rng) {
  if (!rng.bernoulli(p_alpha)) return x;
  return static_cast<std::int64_t>(rng.index(dim.values.size()));
}

DiscVector alpha_step(const SearchSpace& space, DiscVector x, Scalar alpha, Scalar p_alpha, Rng& rng) {
  if (static_cast<std::size_t>(x.size()) != space.n_discrete())
    throw StructuralError("alpha_step: vector does not match the discrete part");
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const auto& dim = space.discrete(static_cast<std::size_t>(k));
    if (const auto* range = std::get_if<IntegerRange>(&dim))
      x[k] = alpha_step_integer(*range, x[k], alpha, rng);
    else
      x[k] = alpha_step_categorical(std::get<Categorical>(dim), x[k], p_alpha, rng);
  }
  return x;
}

Scalar replacement_prob(Scalar alpha, Scalar alpha_init, Scalar k, bool adaptive) {
  const Scalar shift = adaptive ? alpha - alpha_init / 2.0 : alpha / 2.0;
  return 1.0 / (1.0 + std::exp(-k * shift));
}

AdaptedParameters adapt_parameters(Scalar alpha_init, Scalar gamma_init, Scalar progress) {
  const Scalar remaining = 1.0 - progress;
  return {std::max(kAlphaFloor, alpha_init * remaining), std::max(kGammaFloor, gamma_init * remaining)};
}

AdaptedParameters adapt_parameters(Scalar alpha_init, Scalar gamma_init, const EvaluationBudget& budget) {
  return adapt_parameters(alpha_init, gamma_init, budget.progress());
}

RunTrace run_famv(const Problem& problem, const FireflyConfig& config) {
  config.validate();
  const SearchSpace& space = problem.space;
  Rng rng(config.seed);
  Evaluator evaluator(problem, config.max_fe);
  auto done = [&] { return std::move(evaluator).finish(config.seed, config.summary()); };

  std::vector<Firefly> swarm;
  swarm.reserve(static_cast<std::size_t>(config.pop_size));
  for (std::int64_t i = 0; i < config.pop_size; ++i) {
    MixedSolution x = random_solution(space, rng);
    const auto f = evaluator.evaluate(x);
    if (!f) return done();
    swarm.push_back({std::move(x), *f});
  }

  Scalar alpha = config.alpha;
  Scalar gamma = config.gamma;
  while (!evaluator.exhausted()) {
    // Schedules are refreshed once per sweep from the budget spent so far.
    if (config.adapt_alpha || config.adapt_gamma) {
      const auto adapted = adapt_parameters(config.alpha, config.gamma, evaluator.budget());
      if (config.adapt_alpha) alpha = adapted.alpha;
      if (config.adapt_gamma) gamma = adapted.gamma;
    }
    const Scalar p_alpha = replacement_prob(alpha, config.alpha, config.k, config.adapt_alpha);

    for (auto& moving : swarm) {
      bool updated = false;
      for (const auto& brighter : swarm) {
        if (!(brighter.fitness < moving.fitness)) continue;
        const Scalar r = distance(config.distance, space, moving.solution, brighter.solution);
        const Scalar beta = attractiveness(config.beta0, gamma, r);
        const Scalar copy_prob = discrete_attraction_prob(gamma, r);

        MixedSolution next;
        next.cont = continuous_move(moving.solution.cont, brighter.solution.cont, beta, alpha, rng);
        next.disc = beta_step(space, moving.solution.disc, brighter.solution.disc, copy_prob, rng);
        next.disc = alpha_step(space, std::move(next.disc), alpha, p_alpha, rng);
        next = clamp(space, std::move(next));

        const auto f = evaluator.evaluate(next);
        if (!f) return done();
        moving = Firefly{std::move(next), *f};
        updated = true;
      }
      if (!updated) {
        MixedSolution next;
        next.cont = moving.solution.cont;
        for (Eigen::Index k = 0; k < next.cont.size(); ++k) next.cont[k] += alpha * (rng.uniform() - 0.5);
        next.disc = alpha_step(space, moving.solution.disc, alpha, p_alpha, rng);
        next = clamp(space, std::move(next));

        const auto f = evaluator.evaluate(next);
        if (!f) return done();
        moving = Firefly{std::move(next), *f};
      }
    }
  }
  return done();
}

SearchSpace relax(const SearchSpace& space) {
  std::vector<DimensionSpec> dims;
  dims.reserve(space.dimension());
  for (const auto& d : space.dims()) {
    if (const auto* c = std::get_if<Continuous>(&d)) {
      dims.emplace_back(*c);
    } else if (const auto* r = std::get_if<IntegerRange>(&d)) {
      dims.emplace_back(Continuous{static_cast<Scalar>(r->lo) - 0.5, static_cast<Scalar>(r->hi) + 0.5});
    } else {
      const auto n = static_cast<Scalar>(std::get<Categorical>(d).values.size());
      dims.emplace_back(Continuous{-0.5, n - 0.5});
    }
  }
  return SearchSpace(std::move(dims));
}

MixedSolution decode_relaxed(const SearchSpace& space, const ContVector& relaxed) {
  if (static_cast<std::size_t>(relaxed.size()) != space.dimension())
    throw StructuralError("decode_relaxed: length does not match the search space");
  MixedSolution out{ContVector(static_cast<Eigen::Index>(space.n_continuous())),
                    DiscVector(static_cast<Eigen::Index>(space.n_discrete()))};
  for (std::size_t dim = 0; dim < space.dimension(); ++dim) {
    const Scalar v = relaxed[static_cast<Eigen::Index>(dim)];
    const auto slot = static_cast<Eigen::Index>(space.slot(dim));
    const auto& spec = space.dims()[dim];
    if (const auto* c = std::get_if<Continuous>(&spec)) {
      out.cont[slot] = std::clamp(v, c->lo, c->hi);
    } else if (const auto* r = std::get_if<IntegerRange>(&spec)) {
      out.disc[slot] = std::clamp(round_half_away(v), r->lo, r->hi);
    } else {
      const auto n = static_cast<std::int64_t>(std::get<Categorical>(spec).values.size());
      out.disc[slot] = std::clamp<std::int64_t>(round_half_away(v), 0, n - 1);
    }
  }
  return out;
}

RunTrace run_classical_fa(const Problem& problem, const FireflyConfig& config) {
  config.validate();
  const SearchSpace& space = problem.space;
  const SearchSpace relaxed = relax(space);
  Rng rng(config.seed);
  Evaluator evaluator(problem, config.max_fe);
  auto done = [&] { return std::move(evaluator).finish(config.seed, config.summary()); };

  struct Member {
    ContVector position;
    Scalar fitness;
  };
  auto bound = [&](ContVector x) {
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const auto& c = relaxed.continuous(static_cast<std::size_t>(k));
      x[k] = std::clamp(x[k], c.lo, c.hi);
    }
    return x;
  };

  std::vector<Member> swarm;
  swarm.reserve(static_cast<std::size_t>(config.pop_size));
  for (std::int64_t i = 0; i < config.pop_size; ++i) {
    ContVector x = random_solution(relaxed, rng).cont;
    const auto f = evaluator.evaluate(decode_relaxed(space, x));
    if (!f) return done();
    swarm.push_back({std::move(x), *f});
  }

  while (!evaluator.exhausted()) {
    bool moved = false;
    for (auto& moving : swarm) {
      for (const auto& brighter : swarm) {
        if (!(brighter.fitness < moving.fitness)) continue;
        const Scalar r = euclidean(moving.position, brighter.position);
        const Scalar beta = attractiveness(config.beta0, config.gamma, r);
        ContVector next = bound(continuous_move(moving.position, brighter.position, beta, config.alpha, rng));
        const auto f = evaluator.evaluate(decode_relaxed(space, next));
        if (!f) return done();
        moving = Member{std::move(next), *f};
        moved = true;
      }
    }
    // No firefly is strictly brighter than another: the swarm cannot move any further.
    if (!moved) break;
  }
  return done();
}

}  // namespace famv
