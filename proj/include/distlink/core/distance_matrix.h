#ifndef DISTLINK_CORE_DISTANCE_MATRIX_H_
#define DISTLINK_CORE_DISTANCE_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

#include "distlink/core/geo.h"

namespace distlink::core {

// Relative tolerance used when checking symmetry of a matrix supplied from
// outside (files, hand-built fixtures).
inline constexpr double kSymmetryTolerance = 1e-9;

// Square, symmetric, nonnegative matrix with a zero diagonal. Off-diagonal
// zeros are allowed (pseudometric) and the triangle inequality is not
// checked. Entries are kept exactly as given; near-symmetric input is accepted
// within kSymmetryTolerance but never re-symmetrised.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  // Throws InputError if `entries` (row-major) has the wrong length or breaks
  // an invariant.
  DistanceMatrix(std::size_t n, std::vector<double> entries);

  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }
  const std::vector<double>& entries() const { return entries_; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

// Pairwise great-circle distances. Requires a nonempty point sequence.
DistanceMatrix distance_matrix(std::span<const GeoPoint> points);

}  // namespace distlink::core

#endif  // DISTLINK_CORE_DISTANCE_MATRIX_H_
