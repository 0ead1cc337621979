#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "famv/core.hpp"

namespace famv::stats {

inline constexpr Scalar kSignificance = 0.05;

struct Group {
  std::string name;
  std::vector<Scalar> values;
};

/// Named samples, one group per algorithm. Order is preserved in every report.
using SampleSet = std::vector<Group>;

/// Upper tail of the chi-square distribution with `df` degrees of freedom.
Scalar chi_square_sf(Scalar x, Scalar df);
/// Regularized upper incomplete gamma Q(a, x).
Scalar gamma_q(Scalar a, Scalar x);
/// Two-sided standard normal tail, P(|Z| >= |z|).
Scalar normal_two_sided(Scalar z);

/// Mid-ranks (1-based) of the pooled values.
std::vector<Scalar> midranks(std::span<const Scalar> values);

struct KruskalWallis {
  Scalar h = 0.0;
  Scalar p = 1.0;
  std::size_t df = 0;
};

/// Tie-corrected Kruskal-Wallis H with its chi-square p-value.
KruskalWallis kruskal_wallis(const SampleSet& samples);

struct PairTest {
  std::size_t i;
  std::size_t j;
  Scalar z;
  Scalar raw_p;
  Scalar adjusted_p = 1.0;
  bool significant = false;
};

/// Dunn z for every pair i < j, with z > 0 when group i has the higher mean rank.
std::vector<PairTest> dunn_pairwise(const SampleSet& samples);
PairTest dunn_pair(const SampleSet& samples, std::size_t i, std::size_t j);

/// Holm step-down adjustment, returned in input order.
std::vector<Scalar> holm_adjust(std::span<const Scalar> raw_p);

struct GroupSummary {
  std::string name;
  Scalar mean;
  Scalar std;  // n - 1 divisor; 0 for a single value
  bool is_best = false;
  bool similar_to_best = false;
};

struct ComparisonReport {
  KruskalWallis omnibus;
  bool omnibus_significant = false;
  /// All pairs, Holm-adjusted over the whole family.
  std::vector<PairTest> pairwise;
  /// Best group against each other group, Holm-adjusted over that family. Empty when the gate is closed.
  std::vector<PairTest> versus_best;
  std::size_t best = 0;
  std::vector<GroupSummary> groups;
};

Scalar mean(std::span<const Scalar> values);
Scalar sample_std(std::span<const Scalar> values);

/**
 * Best = lowest mean. Kruskal-Wallis gates at 0.05; when it rejects, each
 * group is compared to the best with Dunn and the best-vs-others p-values are
 * Holm-adjusted. A group is similar to the best when that adjusted p is
 * >= 0.05, or when the omnibus test does not reject.
 */
ComparisonReport compare(const SampleSet& samples, Scalar significance = kSignificance);

}  // namespace famv::stats
