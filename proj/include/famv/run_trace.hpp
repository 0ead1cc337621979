#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "famv/core.hpp"

namespace famv {

struct TraceSample {
  std::int64_t fe;
  Scalar best;
};

/// Best-so-far history of one run. Samples are recorded at each improvement and at the last evaluation.
struct RunTrace {
  std::vector<TraceSample> samples;
  Firefly final;
  std::int64_t fe_used = 0;
  std::uint64_t seed = 0;
  std::string config_summary;

  Scalar best() const { return final.fitness; }
};

/**
 * Charges one FE per evaluation against a budget and keeps the global best
 * and its trace. evaluate() returns nullopt once the budget is spent.
 */
class Evaluator {
 public:
  Evaluator(const Problem& problem, std::int64_t max_fe) : problem_(problem), budget_(max_fe) {}

  std::optional<Scalar> evaluate(const MixedSolution& x);

  const EvaluationBudget& budget() const { return budget_; }
  bool exhausted() const { return budget_.exhausted(); }
  const Firefly& best() const { return best_; }
  bool has_best() const { return !samples_.empty(); }

  RunTrace finish(std::uint64_t seed, std::string config_summary) &&;

 private:
  const Problem& problem_;
  EvaluationBudget budget_;
  Firefly best_;
  std::vector<TraceSample> samples_;
};

}  // namespace famv
