#ifndef DISTLINK_MASKING_PERTURB_H_
#define DISTLINK_MASKING_PERTURB_H_

#include <cstdint>
#include <span>
#include <vector>

#include "distlink/core/geo.h"
#include "distlink/masking/rng.h"

namespace distlink::masking {

// Standard deviation of additive Gaussian noise, in degrees, applied to both
// longitude and latitude.
struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// Axis-aligned lon/lat box in degrees.
struct Region {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;

  // Bounding box of Germany.
  static Region germany() { return {47.27, 55.06, 5.87, 15.04}; }

  // Throws InputError unless the box is nonempty and inside WGS84 bounds.
  void validate() const;
  core::GeoPoint sample(RandomStream& rng) const;

  friend bool operator==(const Region&, const Region&) = default;
};

// Adds i.i.d. N(0, sigma^2) noise to every coordinate. Latitudes are clamped
// to [-90, 90] and longitudes wrapped into [-180, 180]. Throws InputError for
// negative or non-finite sigma.
std::vector<core::GeoPoint> perturb_coordinates(std::span<const core::GeoPoint> points,
                                                const NoiseSpec& spec);
std::vector<core::GeoPoint> perturb_coordinates(std::span<const core::GeoPoint> points,
                                                double sigma, RandomStream& rng);
core::GeoPoint perturb_point(const core::GeoPoint& p, double sigma,
                             RandomStream& rng);

}  // namespace distlink::masking

#endif  // DISTLINK_MASKING_PERTURB_H_
