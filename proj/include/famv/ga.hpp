#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "famv/core.hpp"
#include "famv/run_trace.hpp"

namespace famv {

struct GaConfig {
  std::int64_t pop_size = 100;
  Scalar p_crossover = 0.9;
  Scalar p_mutation = 0.01;  // per bit
  std::int64_t tournament_size = 3;
  std::int64_t elitism_count = 1;
  int bits_per_continuous = 16;
  std::int64_t max_fe = 100'000;
  std::uint64_t seed = 0;

  void validate() const;
  std::string summary() const;
};

/// Bit segment of one declared dimension inside a chromosome.
struct Segment {
  std::size_t offset;
  int bits;
};

/// Segment layout derived from a search space, in declaration order.
class ChromosomeLayout {
 public:
  ChromosomeLayout(const SearchSpace& space, int bits_per_continuous);

  std::size_t length() const { return length_; }
  const std::vector<Segment>& segments() const { return segments_; }

 private:
  std::vector<Segment> segments_;
  std::size_t length_ = 0;
};

using Chromosome = std::vector<std::uint8_t>;

/// Bits needed to index m values: ceil(log2 m), 0 for m <= 1.
int bits_for(std::int64_t m);

/**
 * Continuous segments map linearly onto [lo, hi] (all zeros to lo, all ones
 * to hi); discrete segments take their unsigned value modulo the number of
 * admissible values. Bits are read most significant first.
 */
MixedSolution decode(const SearchSpace& space, const ChromosomeLayout& layout, const Chromosome& chrom);

/// Swaps suffixes at `cut` in [1, L-1].
std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, std::size_t cut);
std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b, Rng& rng);

void mutate(Chromosome& chrom, Scalar p_mutation, Rng& rng);

/// Index of the fittest of `size` members drawn uniformly with replacement; first drawn wins ties.
std::size_t tournament_select(std::span<const Scalar> fitness, std::int64_t size, Rng& rng);

RunTrace run_ga(const Problem& problem, const GaConfig& config);

}  // namespace famv
