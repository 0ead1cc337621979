#pragma once

#include <cmath>
#include <string_view>

#include "famv/core.hpp"

namespace famv {

enum class DistanceKind { EuclideanOnly, MixedEuclideanHamming, Gower };

std::string_view to_string(DistanceKind kind);

template <typename DerivedA, typename DerivedB>
Scalar euclidean(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) throw StructuralError("euclidean: length mismatch");
  return (b.template cast<Scalar>() - a.template cast<Scalar>()).norm();
}

/// Number of positions where the two discrete vectors differ.
template <typename DerivedA, typename DerivedB>
std::int64_t hamming(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) throw StructuralError("hamming: length mismatch");
  return static_cast<std::int64_t>((a.array() != b.array()).count());
}

/// (d_E over the continuous part + d_H over the discrete part) / D.
inline Scalar mixed_eh(const SearchSpace& space, const MixedSolution& x, const MixedSolution& y) {
  check_shape(space, x);
  check_shape(space, y);
  const auto d = static_cast<Scalar>(space.dimension());
  return (euclidean(x.cont, y.cont) + static_cast<Scalar>(hamming(x.disc, y.disc))) / d;
}

/**
 * Gower dissimilarity in [0, 1]: continuous components contribute
 * |x_k - y_k| / range_k using the static dimension bounds, discrete
 * components contribute 1 on mismatch and 0 on equality; the sum is
 * averaged over all D dimensions.
 */
inline Scalar gower(const SearchSpace& space, const MixedSolution& x, const MixedSolution& y) {
  check_shape(space, x);
  check_shape(space, y);
  Scalar sum = 0.0;
  for (Eigen::Index k = 0; k < x.cont.size(); ++k) {
    const Scalar range = space.range(static_cast<std::size_t>(k));
    if (!(range > 0.0)) throw StructuralError("gower: zero range on a continuous dimension");
    sum += std::abs(x.cont[k] - y.cont[k]) / range;
  }
  sum += static_cast<Scalar>(hamming(x.disc, y.disc));
  return sum / static_cast<Scalar>(space.dimension());
}

/// Euclidean norm over the whole solution, discrete values read as numbers.
inline Scalar euclidean_full(const MixedSolution& x, const MixedSolution& y) {
  if (x.cont.size() != y.cont.size() || x.disc.size() != y.disc.size())
    throw StructuralError("euclidean: length mismatch");
  const Scalar disc = (x.disc - y.disc).template cast<Scalar>().squaredNorm();
  return std::sqrt((x.cont - y.cont).squaredNorm() + disc);
}

inline Scalar distance(DistanceKind kind, const SearchSpace& space, const MixedSolution& x,
                       const MixedSolution& y) {
  switch (kind) {
    case DistanceKind::EuclideanOnly:
      return euclidean_full(x, y);
    case DistanceKind::MixedEuclideanHamming:
      return mixed_eh(space, x, y);
    case DistanceKind::Gower:
      return gower(space, x, y);
  }
  return 0.0;
}

}  // namespace famv
