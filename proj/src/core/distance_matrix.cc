#include "distlink/core/distance_matrix.h"

#include <cmath>
#include <string>

#include "distlink/core/error.h"

namespace distlink::core {
namespace {

std::string cell(std::size_t i, std::size_t j) {
  return "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) {
    throw InputError("distance matrix: expected " + std::to_string(n_ * n_) +
                     " entries, got " + std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (at(i, i) != 0.0) {
      throw InputError("distance matrix: nonzero diagonal entry " + cell(i, i));
    }
    for (std::size_t j = 0; j < n_; ++j) {
      const double a = at(i, j);
      if (!std::isfinite(a)) {
        throw InputError("distance matrix: non-finite entry " + cell(i, j));
      }
      if (a < 0.0) {
        throw InputError("distance matrix: negative entry " + cell(i, j));
      }
      if (j > i) {
        const double b = at(j, i);
        const double scale = std::max(std::abs(a), std::abs(b));
        if (std::abs(a - b) > kSymmetryTolerance * scale) {
          throw InputError("distance matrix: symmetry violated at " +
                           cell(i, j));
        }
      }
    }
  }
}

DistanceMatrix DistanceMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InputError("distance matrix: row " + std::to_string(i + 1) +
                       " has " + std::to_string(rows[i].size()) +
                       " columns, expected " + std::to_string(n));
    }
    entries.insert(entries.end(), rows[i].begin(), rows[i].end());
  }
  return DistanceMatrix(n, std::move(entries));
}

DistanceMatrix distance_matrix(std::span<const GeoPoint> points) {
  if (points.empty()) {
    throw InputError("distance_matrix: no points");
  }
  const std::size_t n = points.size();
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = great_circle_distance(points[i], points[j]);
      entries[i * n + j] = d;
      entries[j * n + i] = d;
    }
  }
  return DistanceMatrix(n, std::move(entries));
}

}  // namespace distlink::core
