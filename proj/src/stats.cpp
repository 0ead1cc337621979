#include "famv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace famv::stats {

namespace {

constexpr int kMaxIterations = 10'000;
constexpr Scalar kEps = 1e-16;

// P(a, x) by its power series; converges quickly for x < a + 1.
Scalar gamma_p_series(Scalar a, Scalar x) {
  Scalar term = 1.0 / a;
  Scalar sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); for x >= a + 1.
Scalar gamma_q_fraction(Scalar a, Scalar x) {
  constexpr Scalar tiny = std::numeric_limits<Scalar>::min() / kEps;
  Scalar b = x + 1.0 - a;
  Scalar c = 1.0 / tiny;
  Scalar d = 1.0 / b;
  Scalar h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const Scalar an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Scalar delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

Scalar tie_sum(std::span<const Scalar> pooled) {
  std::vector<Scalar> sorted(pooled.begin(), pooled.end());
  std::sort(sorted.begin(), sorted.end());
  Scalar sum = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<Scalar>(j - i);
    sum += t * t * t - t;
    i = j;
  }
  return sum;
}

struct RankedSamples {
  std::vector<Scalar> mean_rank;
  std::vector<std::size_t> sizes;
  Scalar total = 0.0;
  Scalar ties = 0.0;
};

RankedSamples rank_samples(const SampleSet& samples) {
  if (samples.empty()) throw StructuralError("rank test needs at least one group");
  std::vector<Scalar> pooled;
  for (const auto& g : samples) {
    if (g.values.empty()) throw StructuralError("group '" + g.name + "' is empty");
    pooled.insert(pooled.end(), g.values.begin(), g.values.end());
  }
  const auto ranks = midranks(pooled);
  RankedSamples out;
  std::size_t offset = 0;
  for (const auto& g : samples) {
    Scalar sum = 0.0;
    for (std::size_t k = 0; k < g.values.size(); ++k) sum += ranks[offset + k];
    out.mean_rank.push_back(sum / static_cast<Scalar>(g.values.size()));
    out.sizes.push_back(g.values.size());
    offset += g.values.size();
  }
  out.total = static_cast<Scalar>(pooled.size());
  out.ties = tie_sum(pooled);
  return out;
}

PairTest dunn_from_ranks(const RankedSamples& r, std::size_t i, std::size_t j) {
  const Scalar n = r.total;
  const Scalar variance = (n * (n + 1.0) / 12.0 - r.ties / (12.0 * (n - 1.0))) *
                          (1.0 / static_cast<Scalar>(r.sizes[i]) + 1.0 / static_cast<Scalar>(r.sizes[j]));
  if (!(variance > 0.0)) return {i, j, 0.0, 1.0};
  const Scalar z = (r.mean_rank[i] - r.mean_rank[j]) / std::sqrt(variance);
  return {i, j, z, normal_two_sided(z)};
}

}  // namespace

Scalar gamma_q(Scalar a, Scalar x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_q needs a > 0");
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

Scalar chi_square_sf(Scalar x, Scalar df) { return gamma_q(df / 2.0, x / 2.0); }

Scalar normal_two_sided(Scalar z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

std::vector<Scalar> midranks(std::span<const Scalar> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<Scalar> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 share the average of ranks i+1..j.
    const Scalar rank = (static_cast<Scalar>(i + 1) + static_cast<Scalar>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

KruskalWallis kruskal_wallis(const SampleSet& samples) {
  if (samples.size() < 2) throw StructuralError("Kruskal-Wallis needs at least two groups");
  const auto r = rank_samples(samples);
  if (r.total < 3.0) throw StructuralError("Kruskal-Wallis needs at least three observations");
  const Scalar n = r.total;
  KruskalWallis out;
  out.df = samples.size() - 1;
  const Scalar correction = 1.0 - r.ties / (n * n * n - n);
  if (!(correction > 0.0)) return out;  // every value identical

  Scalar h = 0.0;
  for (std::size_t g = 0; g < samples.size(); ++g) {
    const Scalar dev = r.mean_rank[g] - (n + 1.0) / 2.0;
    h += static_cast<Scalar>(r.sizes[g]) * dev * dev;
  }
  out.h = 12.0 / (n * (n + 1.0)) * h / correction;
  out.p = chi_square_sf(out.h, static_cast<Scalar>(out.df));
  return out;
}

std::vector<PairTest> dunn_pairwise(const SampleSet& samples) {
  const auto r = rank_samples(samples);
  std::vector<PairTest> out;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) out.push_back(dunn_from_ranks(r, i, j));
  return out;
}

PairTest dunn_pair(const SampleSet& samples, std::size_t i, std::size_t j) {
  if (i >= samples.size() || j >= samples.size()) throw StructuralError("dunn_pair: group index out of range");
  return dunn_from_ranks(rank_samples(samples), i, j);
}

std::vector<Scalar> holm_adjust(std::span<const Scalar> raw_p) {
  const std::size_t m = raw_p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return raw_p[a] < raw_p[b]; });
  std::vector<Scalar> adjusted(m);
  Scalar running = 0.0;
  for (std::size_t rank = 0; rank < m; ++rank) {
    const Scalar scaled = static_cast<Scalar>(m - rank) * raw_p[order[rank]];
    running = std::max(running, scaled);
    adjusted[order[rank]] = std::min(1.0, running);
  }
  return adjusted;
}

Scalar mean(std::span<const Scalar> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<Scalar>(values.size());
}

Scalar sample_std(std::span<const Scalar> values) {
  if (values.size() < 2) return 0.0;
  const Scalar mu = mean(values);
  Scalar ss = 0.0;
  for (Scalar v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<Scalar>(values.size() - 1));
}

ComparisonReport compare(const SampleSet& samples, Scalar significance) {
  if (samples.empty()) throw StructuralError("comparison needs at least one group");
  ComparisonReport report;
  for (const auto& g : samples) {
    if (g.values.empty()) throw StructuralError("group '" + g.name + "' is empty");
    report.groups.push_back({g.name, mean(g.values), sample_std(g.values)});
  }
  for (std::size_t g = 1; g < report.groups.size(); ++g)
    if (report.groups[g].mean < report.groups[report.best].mean) report.best = g;
  report.groups[report.best].is_best = true;
  report.groups[report.best].similar_to_best = true;

  std::size_t total = 0;
  for (const auto& g : samples) total += g.values.size();
  if (samples.size() < 2 || total < 3) {
    for (auto& g : report.groups) g.similar_to_best = true;
    return report;
  }

  report.omnibus = kruskal_wallis(samples);
  report.omnibus_significant = report.omnibus.p < significance;

  report.pairwise = dunn_pairwise(samples);
  {
    std::vector<Scalar> raw;
    for (const auto& t : report.pairwise) raw.push_back(t.raw_p);
    const auto adjusted = holm_adjust(raw);
    for (std::size_t k = 0; k < raw.size(); ++k) {
      report.pairwise[k].adjusted_p = adjusted[k];
      report.pairwise[k].significant = report.omnibus_significant && adjusted[k] < significance;
    }
  }

  if (!report.omnibus_significant) {
    for (auto& g : report.groups) g.similar_to_best = true;
    return report;
  }

  for (std::size_t g = 0; g < samples.size(); ++g)
    if (g != report.best) report.versus_best.push_back(dunn_pair(samples, report.best, g));
  std::vector<Scalar> raw;
  for (const auto& t : report.versus_best) raw.push_back(t.raw_p);
  const auto adjusted = holm_adjust(raw);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    auto& t = report.versus_best[k];
    t.adjusted_p = adjusted[k];
    t.significant = adjusted[k] < significance;
    report.groups[t.j].similar_to_best = !t.significant;
  }
  return report;
}

}  // namespace famv::stats
