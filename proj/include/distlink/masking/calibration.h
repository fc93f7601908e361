#ifndef DISTLINK_MASKING_CALIBRATION_H_
#define DISTLINK_MASKING_CALIBRATION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "distlink/graph/approx_relation.h"
#include "distlink/masking/perturb.h"

namespace distlink::masking {

// Empirical distribution of the distance deviation d - d' (original distance
// minus distance after perturbing both endpoints) for one noise level. This is
// the snooper's own simulation of the mask.
struct CalibrationTable {
  double sigma = 0.0;
  std::uint64_t seed = 0;
  Region region;
  std::vector<double> deviations;  // km, ascending

  std::size_t n_pairs() const { return deviations.size(); }
};

// Samples `n_pairs` point pairs uniformly from the region's box, perturbs both
// points of each pair with N(0, sigma^2) noise and records d - d'. Pair i
// draws from its own stream, so the table does not depend on evaluation
// order. Throws InputError if n_pairs < 2, sigma < 0 or the region is empty.
CalibrationTable calibrate(const Region& region, double sigma, std::size_t n_pairs,
                           std::uint64_t seed);

// Quantile of an ascending sample by linear interpolation between order
// statistics at position (n + 1) p (1-based), clamped to the sample range.
// For {-2, -1, 0, 1, 2} this gives -1.5 at p = 0.25.
double empirical_quantile(std::span<const double> sorted, double p);

// Unbiased sample variance (divisor n - 1). Requires n >= 2.
double sample_variance(std::span<const double> sample);

struct BandSpec {
  double alpha = 0.0;
  double lo = 0.0;  // (1 - alpha) / 2 quantile
  double hi = 0.0;  // (1 + alpha) / 2 quantile

  graph::ApproxRelation relation() const {
    return graph::ApproxRelation::quantile_band(lo, hi);
  }
};

// Central band expected to contain a fraction alpha of deviations. Throws
// InputError unless 0 < alpha < 1, DegenerateError if lo >= hi (e.g. a
// sigma = 0 table).
BandSpec band_from_table(const CalibrationTable& table, double alpha);

// 1 / sample_variance(deviations); DegenerateError when the variance is 0.
double utility_score(const CalibrationTable& table);

// Probabilities of the quantile columns in the calibration summary.
inline constexpr double kSummaryProbabilities[] = {0.05, 0.1, 0.25, 0.5,
                                                   0.75, 0.9, 0.95};

// JSON: {"sigma", "seed", "region": {lat_min, lat_max, lon_min, lon_max},
// "n_pairs", "deviations": [...]}.
std::string calibration_to_json(const CalibrationTable& table);
CalibrationTable calibration_from_json(const std::string& text);
void save_calibration(const std::filesystem::path& path, const CalibrationTable& table);
CalibrationTable load_calibration(const std::filesystem::path& path);

}  // namespace distlink::masking

#endif  // DISTLINK_MASKING_CALIBRATION_H_
