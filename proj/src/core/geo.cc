#include "distlink/core/geo.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace distlink::core {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lon) && std::isfinite(p.lat) && p.lon >= -180.0 &&
         p.lon <= 180.0 && p.lat >= -90.0 && p.lat <= 90.0;
}

double great_circle_distance(const GeoPoint& a, const GeoPoint& b) {
  // cos_phi can round to just below 1 for identical points.
  if (a == b) return 0.0;
  const double lat1 = a.lat * kDegToRad;
  const double lat2 = b.lat * kDegToRad;
  const double dlon = (a.lon - b.lon) * kDegToRad;
  // Each product is commutative and cos is even, so swapping a and b yields
  // the same bits.
  const double cos_phi = std::sin(lat1) * std::sin(lat2) +
                         std::cos(lat1) * std::cos(lat2) * std::cos(dlon);
  return kEarthRadiusKm * std::acos(std::clamp(cos_phi, -1.0, 1.0));
}

}  // namespace distlink::core
