#include "famv/run_trace.hpp"

namespace famv {

std::optional<Scalar> Evaluator::evaluate(const MixedSolution& x) {
  if (!budget_.consume(1)) return std::nullopt;
  const Scalar f = problem_.evaluate(x);
  // Strict improvement: the first solution found at a given level is kept.
  if (samples_.empty() || f < best_.fitness) {
    best_ = Firefly{x, f};
    samples_.push_back({budget_.consumed(), f});
  }
  return f;
}

RunTrace Evaluator::finish(std::uint64_t seed, std::string config_summary) && {
  if (!samples_.empty() && samples_.back().fe != budget_.consumed())
    samples_.push_back({budget_.consumed(), best_.fitness});
  RunTrace trace;
  trace.samples = std::move(samples_);
  trace.final = std::move(best_);
  trace.fe_used = budget_.consumed();
  trace.seed = seed;
  trace.config_summary = std::move(config_summary);
  return trace;
}

}  // namespace famv
