#ifndef DISTLINK_CORE_GEO_H_
#define DISTLINK_CORE_GEO_H_

#include <span>

namespace distlink::core {

inline constexpr double kEarthRadiusKm = 6371.0;

// WGS84 longitude/latitude in decimal degrees.
struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid(const GeoPoint& p);

// Great-circle distance in km on a sphere of radius 6371 km, using the
// spherical law of cosines. The cosine is clamped to [-1, 1] before arccos so
// near-identical and near-antipodal points never produce NaN. The result is
// exactly symmetric in its arguments.
double great_circle_distance(const GeoPoint& a, const GeoPoint& b);

}  // namespace distlink::core

#endif  // DISTLINK_CORE_GEO_H_
