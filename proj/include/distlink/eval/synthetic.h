#ifndef DISTLINK_EVAL_SYNTHETIC_H_
#define DISTLINK_EVAL_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "distlink/attack/attack.h"
#include "distlink/eval/evaluate.h"
#include "distlink/masking/perturb.h"
#include "distlink/masking/rng.h"

namespace distlink::eval {

// Categorical distribution of one quasi-identifier attribute.
struct CategoricalSampler {
  std::string name;
  std::vector<std::string> values;
  std::vector<double> weights;  // nonnegative, positive sum; need not sum to 1

  void validate() const;
  const std::string& sample(masking::RandomStream& rng) const;
};

struct SimulationConfig {
  std::size_t n_target = 0;
  std::size_t n_ident = 0;
  std::size_t n_common = 0;
  std::vector<double> sigma_grid;
  std::vector<double> alpha_grid;
  std::size_t repetitions = 1;
  std::vector<CategoricalSampler> qi_distributions;
  masking::Region region = masking::Region::germany();
  std::uint64_t seed = 0;
  std::size_t calibration_pairs = 1000;
  // false: one calibration per sigma shared by all repetitions.
  bool recalibrate_per_repetition = false;
  std::uint64_t node_budget = 100'000'000;
  double ru_alpha = 0.5;

  // Throws InputError describing the first invalid field.
  void validate() const;
};

// Reads a config JSON. A string-valued "qi_distributions" is a path (relative
// to `base_dir`) to a JSON file holding the sampler array.
SimulationConfig config_from_json(const std::string& text,
                                  const std::filesystem::path& base_dir = {});
SimulationConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const SimulationConfig& config);

struct SyntheticPair {
  attack::MetricMicrodata target;  // distances from perturbed coordinates
  attack::MetricMicrodata ident;   // distances from true coordinates
  GroundTruth truth;
  std::vector<core::GeoPoint> target_points;  // perturbed
  std::vector<core::GeoPoint> ident_points;
};

// Draws n_target + n_ident - n_common entities with coordinates uniform in the
// region and quasi-identifiers from the configured samplers. The first
// n_common entities appear in both files; each file's rows are shuffled
// independently. The target matrix is computed after adding N(0, sigma^2)
// noise to the target coordinates, the identification matrix from the true
// coordinates. Both tables carry a per-file `id` column (T0001..., I0001...)
// that is not a quasi-identifier.
SyntheticPair generate_synthetic_pair(const SimulationConfig& config, double sigma,
                                      masking::RandomStream& rng);
SyntheticPair generate_synthetic_pair(const SimulationConfig& config, double sigma,
                                      std::uint64_t seed);

}  // namespace distlink::eval

#endif  // DISTLINK_EVAL_SYNTHETIC_H_
