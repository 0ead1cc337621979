#include "famv/distance.hpp"

namespace famv {

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::EuclideanOnly:
      return "euclidean";
    case DistanceKind::MixedEuclideanHamming:
      return "euclidean-hamming";
    case DistanceKind::Gower:
      return "gower";
  }
  return "unknown";
}

}  // namespace famv
