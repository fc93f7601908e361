#include "distlink/masking/calibration.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "distlink/core/error.h"
#include "distlink/core/geo.h"

namespace distlink::masking {
namespace {

constexpr std::uint64_t kCalibrationStream = 0x63616c69;  // "cali"

}  // namespace

CalibrationTable calibrate(const Region& region, double sigma, std::size_t n_pairs,
                           std::uint64_t seed) {
  region.validate();
  if (n_pairs < 2) throw InputError("calibrate: need at least 2 pairs");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InputError("calibrate: sigma must be finite and >= 0");
  }
  CalibrationTable table;
  table.sigma = sigma;
  table.seed = seed;
  table.region = region;
  table.deviations.resize(n_pairs);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    RandomStream rng(seed, {kCalibrationStream, i});
    const core::GeoPoint a = region.sample(rng);
    const core::GeoPoint b = region.sample(rng);
    const core::GeoPoint a2 = perturb_point(a, sigma, rng);
    const core::GeoPoint b2 = perturb_point(b, sigma, rng);
    table.deviations[i] =
        core::great_circle_distance(a, b) - core::great_circle_distance(a2, b2);
  }
  std::sort(table.deviations.begin(), table.deviations.end());
  return table;
}

double empirical_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DegenerateError("quantile of an empty sample");
  const double n = static_cast<double>(sorted.size());
  const double h = (n + 1.0) * p;  // 1-based position
  if (h <= 1.0) return sorted.front();
  if (h >= n) return sorted.back();
  const auto k = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(k);
  return sorted[k - 1] + frac * (sorted[k] - sorted[k - 1]);
}

double sample_variance(std::span<const double> sample) {
  if (sample.size() < 2) throw DegenerateError("variance needs at least 2 values");
  double mean = 0.0;
  for (double x : sample) mean += x;
  mean /= static_cast<double>(sample.size());
  double ss = 0.0;
  for (double x : sample) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(sample.size() - 1);
}

BandSpec band_from_table(const CalibrationTable& table, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("alpha must lie in (0, 1)");
  }
  BandSpec band;
  band.alpha = alpha;
  band.lo = empirical_quantile(table.deviations, (1.0 - alpha) / 2.0);
  band.hi = empirical_quantile(table.deviations, (1.0 + alpha) / 2.0);
  if (!(band.lo < band.hi)) {
    throw DegenerateError("calibration band is empty (lo >= hi); sigma = " +
                          std::to_string(table.sigma));
  }
  return band;
}

double utility_score(const CalibrationTable& table) {
  const double var = sample_variance(table.deviations);
  if (var == 0.0) throw DegenerateError("utility undefined: zero variance");
  return 1.0 / var;
}

std::string calibration_to_json(const CalibrationTable& table) {
  nlohmann::ordered_json j;
  j["sigma"] = table.sigma;
  j["seed"] = table.seed;
  j["region"] = {{"lat_min", table.region.lat_min},
                 {"lat_max", table.region.lat_max},
                 {"lon_min", table.region.lon_min},
                 {"lon_max", table.region.lon_max}};
  j["n_pairs"] = table.n_pairs();
  j["deviations"] = table.deviations;
  return j.dump(1);
}

CalibrationTable calibration_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    CalibrationTable t;
    t.sigma = j.at("sigma").get<double>();
    t.seed = j.at("seed").get<std::uint64_t>();
    const auto& r = j.at("region");
    t.region = {r.at("lat_min").get<double>(), r.at("lat_max").get<double>(),
                r.at("lon_min").get<double>(), r.at("lon_max").get<double>()};
    t.deviations = j.at("deviations").get<std::vector<double>>();
    if (j.at("n_pairs").get<std::size_t>() != t.deviations.size()) {
      throw InputError("calibration json: n_pairs differs from deviation count");
    }
    if (t.deviations.size() < 2) {
      throw InputError("calibration json: need at least 2 deviations");
    }
    if (!std::is_sorted(t.deviations.begin(), t.deviations.end())) {
      throw InputError("calibration json: deviations not sorted ascending");
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("calibration json: ") + e.what());
  }
}

void save_calibration(const std::filesystem::path& path,
                      const CalibrationTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << calibration_to_json(table) << '\n';
}

CalibrationTable load_calibration(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return calibration_from_json(ss.str());
}

}  // namespace distlink::masking
