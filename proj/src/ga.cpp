#include "famv/ga.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace famv {

void GaConfig::validate() const {
  if (pop_size < 2 || pop_size % 2 != 0) throw ConfigError("GA population size must be even and >= 2");
  if (p_crossover < 0.0 || p_crossover > 1.0) throw ConfigError("crossover probability must lie in [0, 1]");
  if (p_mutation < 0.0 || p_mutation > 1.0) throw ConfigError("mutation probability must lie in [0, 1]");
  if (tournament_size < 1) throw ConfigError("tournament size must be positive");
  if (elitism_count < 1 || elitism_count > pop_size) throw ConfigError("elitism count must lie in [1, pop_size]");
  if (bits_per_continuous < 1 || bits_per_continuous > 62) throw ConfigError("bits per continuous must lie in [1, 62]");
  if (max_fe < 1) throw ConfigError("max_fe must be positive");
}

std::string GaConfig::summary() const {
  std::ostringstream out;
  out << "pop=" << pop_size << " pc=" << p_crossover << " pm=" << p_mutation << " tournament=" << tournament_size
      << " elite=" << elitism_count << " bits=" << bits_per_continuous << " max_fe=" << max_fe << " seed=" << seed;
  return out.str();
}

int bits_for(std::int64_t m) {
  int bits = 0;
  while ((std::int64_t{1} << bits) < m) ++bits;
  return bits;
}

ChromosomeLayout::ChromosomeLayout(const SearchSpace& space, int bits_per_continuous) {
  for (const auto& d : space.dims()) {
    int bits = bits_per_continuous;
    if (const auto* r = std::get_if<IntegerRange>(&d))
      bits = bits_for(r->hi - r->lo + 1);
    else if (const auto* c = std::get_if<Categorical>(&d))
      bits = bits_for(static_cast<std::int64_t>(c->values.size()));
    segments_.push_back({length_, bits});
    length_ += static_cast<std::size_t>(bits);
  }
}

namespace {

std::uint64_t segment_value(const Chromosome& chrom, const Segment& seg) {
  std::uint64_t v = 0;
  for (int b = 0; b < seg.bits; ++b) v = (v << 1) | (chrom[seg.offset + static_cast<std::size_t>(b)] & 1u);
  return v;
}

}  // namespace

MixedSolution decode(const SearchSpace& space, const ChromosomeLayout& layout, const Chromosome& chrom) {
  if (chrom.size() != layout.length())
    throw StructuralError("chromosome length " + std::to_string(chrom.size()) + " does not match layout length " +
                          std::to_string(layout.length()));
  MixedSolution out{ContVector(static_cast<Eigen::Index>(space.n_continuous())),
                    DiscVector(static_cast<Eigen::Index>(space.n_discrete()))};
  for (std::size_t dim = 0; dim < space.dimension(); ++dim) {
    const auto& seg = layout.segments()[dim];
    const std::uint64_t v = segment_value(chrom, seg);
    const auto slot = static_cast<Eigen::Index>(space.slot(dim));
    const auto& spec = space.dims()[dim];
    if (const auto* c = std::get_if<Continuous>(&spec)) {
      const auto top = static_cast<Scalar>((std::uint64_t{1} << seg.bits) - 1);
      out.cont[slot] = v == 0 ? c->lo : std::min(c->hi, c->lo + (static_cast<Scalar>(v) / top) * (c->hi - c->lo));
    } else if (const auto* r = std::get_if<IntegerRange>(&spec)) {
      out.disc[slot] = r->lo + static_cast<std::int64_t>(v % static_cast<std::uint64_t>(r->hi - r->lo + 1));
    } else {
      out.disc[slot] = static_cast<std::int64_t>(v % std::get<Categorical>(spec).values.size());
    }
  }
  return out;
}

std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, std::size_t cut) {
  if (a.size() != b.size()) throw StructuralError("crossover: parent lengths differ");
  if (cut > a.size()) throw StructuralError("crossover: cut point beyond chromosome length");
  Chromosome c1(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut));
  Chromosome c2(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(cut));
  c1.insert(c1.end(), b.begin() + static_cast<std::ptrdiff_t>(cut), b.end());
  c2.insert(c2.end(), a.begin() + static_cast<std::ptrdiff_t>(cut), a.end());
  return {std::move(c1), std::move(c2)};
}

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
  if (a.size() != b.size()) throw StructuralError("crossover: parent lengths differ");
  if (a.size() < 2) return {a, b};
  const auto cut = 1 + static_cast<std::size_t>(rng.index(a.size() - 1));
  return crossover_at(a, b, cut);
}

void mutate(Chromosome& chrom, Scalar p_mutation, Rng& rng) {
  for (auto& bit : chrom)
    if (rng.bernoulli(p_mutation)) bit ^= 1u;
}

std::size_t tournament_select(std::span<const Scalar> fitness, std::int64_t size, Rng& rng) {
  std::size_t winner = static_cast<std::size_t>(rng.index(fitness.size()));
  for (std::int64_t t = 1; t < size; ++t) {
    const auto pick = static_cast<std::size_t>(rng.index(fitness.size()));
    if (fitness[pick] < fitness[winner]) winner = pick;
  }
  return winner;
}

RunTrace run_ga(const Problem& problem, const GaConfig& config) {
  config.validate();
  const SearchSpace& space = problem.space;
  const ChromosomeLayout layout(space, config.bits_per_continuous);
  Rng rng(config.seed);
  Evaluator evaluator(problem, config.max_fe);
  auto done = [&] { return std::move(evaluator).finish(config.seed, config.summary()); };

  const auto pop_size = static_cast<std::size_t>(config.pop_size);
  std::vector<Chromosome> population;
  std::vector<Scalar> fitness;
  population.reserve(pop_size);
  fitness.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    Chromosome chrom(layout.length());
    for (auto& bit : chrom) bit = static_cast<std::uint8_t>(rng() >> 63);
    const auto f = evaluator.evaluate(decode(space, layout, chrom));
    if (!f) return done();
    population.push_back(std::move(chrom));
    fitness.push_back(*f);
  }

  const auto elites = static_cast<std::size_t>(config.elitism_count);
  // Every slot is filled by an elite copy: nothing is ever re-evaluated again.
  if (elites >= pop_size) return done();

  std::vector<std::size_t> order(pop_size);
  while (!evaluator.exhausted()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fitness[a] < fitness[b]; });

    std::vector<Chromosome> next;
    std::vector<Scalar> next_fitness;
    next.reserve(pop_size);
    next_fitness.reserve(pop_size);
    for (std::size_t e = 0; e < elites; ++e) {
      next.push_back(population[order[e]]);
      next_fitness.push_back(fitness[order[e]]);
    }

    while (next.size() < pop_size) {
      const auto& a = population[tournament_select(fitness, config.tournament_size, rng)];
      const auto& b = population[tournament_select(fitness, config.tournament_size, rng)];
      auto children = rng.bernoulli(config.p_crossover) ? one_point_crossover(a, b, rng) : std::pair{a, b};
      for (auto* child : {&children.first, &children.second}) {
        if (next.size() == pop_size) break;
        mutate(*child, config.p_mutation, rng);
        const auto f = evaluator.evaluate(decode(space, layout, *child));
        if (!f) return done();
        next.push_back(std::move(*child));
        next_fitness.push_back(*f);
      }
    }
    population = std::move(next);
    fitness = std::move(next_fitness);
  }
  return done();
}

}  // namespace famv
