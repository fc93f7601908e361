#include "distlink/masking/perturb.h"

#include <algorithm>
#include <cmath>

#include "distlink/core/error.h"

namespace distlink::masking {
namespace {

constexpr std::uint64_t kPerturbStream = 0x70657274;  // "pert"

double wrap_longitude(double lon) {
  if (lon >= -180.0 && lon <= 180.0) return lon;
  double wrapped = std::fmod(lon + 180.0, 360.0);
  if (wrapped < 0) wrapped += 360.0;
  return wrapped - 180.0;
}

void check_sigma(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InputError("noise sigma must be finite and >= 0");
  }
}

}  // namespace

void Region::validate() const {
  const bool ok = lat_min < lat_max && lon_min < lon_max && lat_min >= -90.0 &&
                  lat_max <= 90.0 && lon_min >= -180.0 && lon_max <= 180.0;
  if (!ok) throw InputError("region must be a nonempty box inside WGS84 bounds");
}

core::GeoPoint Region::sample(RandomStream& rng) const {
  const double lon = rng.uniform(lon_min, lon_max);
  const double lat = rng.uniform(lat_min, lat_max);
  return {lon, lat};
}

core::GeoPoint perturb_point(const core::GeoPoint& p, double sigma,
                             RandomStream& rng) {
  if (sigma == 0.0) return p;
  const double lon = p.lon + sigma * rng.normal();
  const double lat = p.lat + sigma * rng.normal();
  return {wrap_longitude(lon), std::clamp(lat, -90.0, 90.0)};
}

std::vector<core::GeoPoint> perturb_coordinates(std::span<const core::GeoPoint> points,
                                                double sigma, RandomStream& rng) {
  check_sigma(sigma);
  std::vector<core::GeoPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(perturb_point(p, sigma, rng));
  return out;
}

std::vector<core::GeoPoint> perturb_coordinates(std::span<const core::GeoPoint> points,
                                                const NoiseSpec& spec) {
  RandomStream rng(spec.seed, {kPerturbStream});
  return perturb_coordinates(points, spec.sigma, rng);
}

}  // namespace distlink::masking
