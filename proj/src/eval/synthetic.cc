#include "distlink/eval/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "distlink/core/error.h"

namespace distlink::eval {
namespace {

using nlohmann::json;

constexpr std::uint64_t kSyntheticStream = 0x73796e74;  // "synt"

std::string row_id(char prefix, std::size_t i, std::size_t n) {
  const int width = static_cast<int>(std::to_string(n).size());
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%0*zu", prefix, width, i + 1);
  return buf;
}

template <typename T>
void shuffle(std::vector<T>& v, masking::RandomStream& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

std::vector<CategoricalSampler> samplers_from_json(const json& j) {
  std::vector<CategoricalSampler> out;
  for (const auto& s : j) {
    CategoricalSampler c;
    c.name = s.at("name").get<std::string>();
    c.values = s.at("values").get<std::vector<std::string>>();
    c.weights = s.at("weights").get<std::vector<double>>();
    out.push_back(std::move(c));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void CategoricalSampler::validate() const {
  if (name.empty()) throw InputError("qi sampler without a name");
  if (values.empty() || values.size() != weights.size()) {
    throw InputError("qi sampler '" + name + "': values and weights differ in length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InputError("qi sampler '" + name + "': weights must be finite and >= 0");
    }
    total += w;
  }
  if (!(total > 0.0)) throw InputError("qi sampler '" + name + "': zero total weight");
}

const std::string& CategoricalSampler::sample(masking::RandomStream& rng) const {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double u = rng.uniform01() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    cumulative += weights[i];
    if (u < cumulative) return values[i];
  }
  // Rounding can leave u at the very top; fall back to the last positive class.
  for (std::size_t i = values.size(); i-- > 0;) {
    if (weights[i] > 0.0) return values[i];
  }
  return values.back();
}

void SimulationConfig::validate() const {
  if (n_target == 0 || n_ident == 0) throw InputError("config: file sizes must be >= 1");
  if (n_common > std::min(n_target, n_ident)) {
    throw InputError("config: n_common exceeds min(n_target, n_ident)");
  }
  if (repetitions < 1) throw InputError("config: repetitions must be >= 1");
  if (sigma_grid.empty() || alpha_grid.empty()) {
    throw InputError("config: sigma_grid and alpha_grid must be nonempty");
  }
  for (double s : sigma_grid) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw InputError("config: sigma must be >= 0");
  }
  for (double a : alpha_grid) {
    if (!(a > 0.0 && a < 1.0)) throw InputError("config: alpha must lie in (0, 1)");
  }
  if (qi_distributions.empty()) throw InputError("config: no qi_distributions");
  std::set<std::string> names;
  for (const auto& s : qi_distributions) {
    s.validate();
    if (s.name == "id" || !names.insert(s.name).second) {
      throw InputError("config: duplicate or reserved qi name '" + s.name + "'");
    }
  }
  if (calibration_pairs < 2) throw InputError("config: calibration_pairs must be >= 2");
  if (node_budget == 0) throw InputError("config: node_budget must be > 0");
  region.validate();
}

SimulationConfig config_from_json(const std::string& text,
                                  const std::filesystem::path& base_dir) {
  SimulationConfig c;
  try {
    const json j = json::parse(text);
    c.n_target = j.at("n_target").get<std::size_t>();
    c.n_ident = j.at("n_ident").get<std::size_t>();
    c.n_common = j.at("n_common").get<std::size_t>();
    c.sigma_grid = j.at("sigma_grid").get<std::vector<double>>();
    c.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
    c.repetitions = j.value("repetitions", std::size_t{1});
    const json& qi = j.at("qi_distributions");
    if (qi.is_string()) {
      const json file = json::parse(read_file(base_dir / qi.get<std::string>()));
      c.qi_distributions = samplers_from_json(file);
    } else {
      c.qi_distributions = samplers_from_json(qi);
    }
    if (j.contains("region")) {
      const json& r = j.at("region");
      c.region = {r.at("lat_min").get<double>(), r.at("lat_max").get<double>(),
                  r.at("lon_min").get<double>(), r.at("lon_max").get<double>()};
    }
    c.seed = j.value("seed", std::uint64_t{0});
    c.calibration_pairs = j.value("calibration_pairs", std::size_t{1000});
    c.recalibrate_per_repetition = j.value("recalibrate_per_repetition", false);
    c.node_budget = j.value("node_budget", std::uint64_t{100'000'000});
    c.ru_alpha = j.value("ru_alpha", 0.5);
  } catch (const json::exception& e) {
    throw InputError(std::string("config json: ") + e.what());
  }
  c.validate();
  return c;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  return config_from_json(read_file(path), path.parent_path());
}

std::string config_to_json(const SimulationConfig& c) {
  nlohmann::ordered_json j;
  j["n_target"] = c.n_target;
  j["n_ident"] = c.n_ident;
  j["n_common"] = c.n_common;
  j["sigma_grid"] = c.sigma_grid;
  j["alpha_grid"] = c.alpha_grid;
  j["repetitions"] = c.repetitions;
  auto samplers = nlohmann::ordered_json::array();
  for (const auto& s : c.qi_distributions) {
    samplers.push_back({{"name", s.name}, {"values", s.values}, {"weights", s.weights}});
  }
  j["qi_distributions"] = samplers;
  j["region"] = {{"lat_min", c.region.lat_min},
                 {"lat_max", c.region.lat_max},
                 {"lon_min", c.region.lon_min},
                 {"lon_max", c.region.lon_max}};
  j["seed"] = c.seed;
  j["calibration_pairs"] = c.calibration_pairs;
  j["recalibrate_per_repetition"] = c.recalibrate_per_repetition;
  j["node_budget"] = c.node_budget;
  j["ru_alpha"] = c.ru_alpha;
  return j.dump(2);
}

SyntheticPair generate_synthetic_pair(const SimulationConfig& config, double sigma,
                                      masking::RandomStream& rng) {
  config.validate();
  const std::size_t n_entities = config.n_target + config.n_ident - config.n_common;
  std::vector<core::GeoPoint> points(n_entities);
  std::vector<std::vector<std::string>> qi(n_entities);
  for (std::size_t e = 0; e < n_entities; ++e) {
    points[e] = config.region.sample(rng);
    for (const auto& s : config.qi_distributions) qi[e].push_back(s.sample(rng));
  }

  // Entities [0, n_common) are shared; then target-only, then ident-only.
  std::vector<std::size_t> target_entities(config.n_target);
  std::iota(target_entities.begin(), target_entities.end(), std::size_t{0});
  std::vector<std::size_t> ident_entities(config.n_common);
  std::iota(ident_entities.begin(), ident_entities.end(), std::size_t{0});
  for (std::size_t e = config.n_target; e < n_entities; ++e) ident_entities.push_back(e);
  shuffle(target_entities, rng);
  shuffle(ident_entities, rng);

  std::vector<std::string> schema{"id"};
  std::vector<std::string> qi_names;
  for (const auto& s : config.qi_distributions) {
    schema.push_back(s.name);
    qi_names.push_back(s.name);
  }

  auto make_records = [&](const std::vector<std::size_t>& entities, char prefix) {
    std::vector<core::MicrodataRecord> records;
    for (std::size_t r = 0; r < entities.size(); ++r) {
      core::MicrodataRecord rec;
      rec.values.push_back(row_id(prefix, r, entities.size()));
      for (const auto& v : qi[entities[r]]) rec.values.push_back(v);
      records.push_back(std::move(rec));
    }
    return records;
  };

  std::vector<core::GeoPoint> true_target_points;
  for (std::size_t e : target_entities) true_target_points.push_back(points[e]);
  std::vector<core::GeoPoint> ident_points;
  for (std::size_t e : ident_entities) ident_points.push_back(points[e]);
  std::vector<core::GeoPoint> target_points =
      masking::perturb_coordinates(true_target_points, sigma, rng);

  std::vector<std::size_t> ident_row_of(n_entities, n_entities);
  for (std::size_t r = 0; r < ident_entities.size(); ++r) ident_row_of[ident_entities[r]] = r;
  std::vector<attack::Match> truth;
  for (std::size_t r = 0; r < target_entities.size(); ++r) {
    if (target_entities[r] < config.n_common) {
      truth.push_back({r, ident_row_of[target_entities[r]]});
    }
  }

  SyntheticPair pair{
      {core::MicrodataTable(schema, make_records(target_entities, 'T'), qi_names, "id"),
       core::distance_matrix(target_points)},
      {core::MicrodataTable(schema, make_records(ident_entities, 'I'), qi_names, "id",
                            ident_points),
       core::distance_matrix(ident_points)},
      GroundTruth(std::move(truth)),
      std::move(target_points),
      std::move(ident_points)};
  return pair;
}

SyntheticPair generate_synthetic_pair(const SimulationConfig& config, double sigma,
                                      std::uint64_t seed) {
  masking::RandomStream rng(seed, {kSyntheticStream});
  return generate_synthetic_pair(config, sigma, rng);
}

}  // namespace distlink::eval
