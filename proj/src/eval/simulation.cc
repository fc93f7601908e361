#include "distlink/eval/simulation.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include "distlink/attack/attack.h"
#include "distlink/core/error.h"
#include "distlink/core/io.h"

namespace distlink::eval {
namespace {

constexpr std::uint64_t kRepetitionStream = 0x7265706c;   // "repl"
constexpr std::uint64_t kCalibrationStream = 0x63616c62;  // "calb"

std::string fixed4(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

SimulationRow run_one(const SimulationConfig& config, std::size_t si, std::size_t ai,
                      std::size_t rep, const masking::CalibrationTable* cached) {
  SimulationRow row;
  row.sigma_index = si;
  row.alpha_index = ai;
  row.rep = rep;
  row.sigma = config.sigma_grid[si];
  row.alpha = config.alpha_grid[ai];

  masking::CalibrationTable own;
  if (!cached) {
    own = masking::calibrate(
        config.region, row.sigma, config.calibration_pairs,
        masking::derive_key(config.seed, {kCalibrationStream, 1, rep}));
    cached = &own;
  }
  const masking::BandSpec band = masking::band_from_table(*cached, row.alpha);
  const graph::ApproxRelation rel = band.relation();

  masking::RandomStream rng(config.seed, {kRepetitionStream, si, ai, rep});
  const SyntheticPair pair = generate_synthetic_pair(config, row.sigma, rng);
  row.edge_detection_rate = edge_detection_rate(pair, rel);

  attack::AttackOptions options;
  options.clique.node_budget = config.node_budget;
  try {
    const attack::AttackResult result = attack::run_attack(pair.target, pair.ident, rel, options);
    row.product_vertices = result.product_vertices;
    row.clique_size = result.clique_size;
    row.report = evaluate(result.matches, pair.truth);
  } catch (const ResourceLimitError&) {
    row.budget_exhausted = true;
    row.report = EvaluationReport{};
    row.report.fn = pair.truth.size();
    row.report.precision_defined = false;
  }
  return row;
}

}  // namespace

double edge_detection_rate(const SyntheticPair& pair, const graph::ApproxRelation& rel) {
  const auto& truth = pair.truth.pairs();
  std::size_t total = 0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t j = i + 1; j < truth.size(); ++j) {
      ++total;
      const double wt = pair.target.matrix.at(truth[i].target_row, truth[j].target_row);
      const double wi = pair.ident.matrix.at(truth[i].ident_row, truth[j].ident_row);
      if (rel(wt, wi)) ++hit;
    }
  }
  return total ? static_cast<double>(hit) / static_cast<double>(total) : 0.0;
}

SimulationResult run_simulation(const SimulationConfig& config, unsigned threads) {
  config.validate();
  if (config.n_common == 0) {
    throw InputError("run_simulation: n_common must be > 0 to score the attack");
  }
  const std::size_t n_sigma = config.sigma_grid.size();
  const std::size_t n_alpha = config.alpha_grid.size();
  const std::size_t reps = config.repetitions;

  SimulationResult result;
  result.sigma_grid = config.sigma_grid;
  result.alpha_grid = config.alpha_grid;
  // Every sigma shares the same calibration pairs and unit noise draws, so the
  // tables differ only through sigma.
  const std::uint64_t calibration_seed =
      config.recalibrate_per_repetition
          ? masking::derive_key(config.seed, {kCalibrationStream, 1, 0})
          : masking::derive_key(config.seed, {kCalibrationStream});
  for (double sigma : config.sigma_grid) {
    result.calibrations.push_back(masking::calibrate(config.region, sigma,
                                                     config.calibration_pairs,
                                                     calibration_seed));
  }

  const std::size_t total = n_sigma * n_alpha * reps;
  result.rows.resize(total);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(std::max(1u, threads));
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t k = next++; k < total; k = next++) {
        const std::size_t si = k / (n_alpha * reps);
        const std::size_t ai = (k / reps) % n_alpha;
        const std::size_t rep = k % reps;
        const bool own_calibration = config.recalibrate_per_repetition && rep != 0;
        result.rows[k] = run_one(config, si, ai, rep,
                                 own_calibration ? nullptr : &result.calibrations[si]);
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t si = 0; si < n_sigma; ++si) {
    for (std::size_t ai = 0; ai < n_alpha; ++ai) {
      CellSummary cell;
      cell.sigma = config.sigma_grid[si];
      cell.alpha = config.alpha_grid[ai];
      double sum_p = 0.0;
      double sum_r = 0.0;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const SimulationRow& row = result.rows[(si * n_alpha + ai) * reps + rep];
        if (row.budget_exhausted) {
          ++cell.budget_exhausted;
          continue;
        }
        ++cell.completed;
        sum_p += row.report.precision;
        sum_r += row.report.recall;
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      cell.mean_precision = cell.completed ? sum_p / static_cast<double>(cell.completed) : nan;
      cell.mean_recall = cell.completed ? sum_r / static_cast<double>(cell.completed) : nan;
      result.cells.push_back(cell);
    }
  }
  return result;
}

std::vector<RuPoint> ru_map_data(const SimulationResult& result,
                                 const std::vector<masking::CalibrationTable>& calibrations,
                                 double alpha) {
  if (calibrations.size() != result.sigma_grid.size()) {
    throw InputError("ru_map_data: need one calibration table per sigma");
  }
  std::size_t ai = result.alpha_grid.size();
  for (std::size_t i = 0; i < result.alpha_grid.size(); ++i) {
    if (result.alpha_grid[i] == alpha) ai = i;
  }
  if (ai == result.alpha_grid.size()) {
    throw InputError("ru_map_data: alpha " + core::format_number(alpha) +
                     " is not in the simulated alpha grid");
  }
  std::vector<RuPoint> points;
  for (std::size_t si = 0; si < result.sigma_grid.size(); ++si) {
    points.push_back({result.sigma_grid[si], result.cell(si, ai).mean_precision,
                      masking::utility_score(calibrations[si])});
  }
  return points;
}

void write_results_csv(std::ostream& out, const SimulationResult& result) {
  out << "sigma,alpha,rep,tp,fp,fn,precision,recall,precision_defined,budget_exhausted\n";
  for (const auto& r : result.rows) {
    out << core::format_number(r.sigma) << ',' << core::format_number(r.alpha) << ','
        << r.rep + 1 << ',' << r.report.tp << ',' << r.report.fp << ',' << r.report.fn
        << ',' << core::format_number(r.report.precision) << ','
        << core::format_number(r.report.recall) << ',' << (r.report.precision_defined ? 1 : 0)
        << ',' << (r.budget_exhausted ? 1 : 0) << '\n';
  }
}

namespace {

template <typename Field>
void write_grid(std::ostream& out, const SimulationResult& result, Field field) {
  out << "alpha\\sigma";
  for (double s : result.sigma_grid) out << ',' << core::format_number(s);
  out << '\n';
  for (std::size_t ai = 0; ai < result.alpha_grid.size(); ++ai) {
    out << core::format_number(result.alpha_grid[ai]);
    for (std::size_t si = 0; si < result.sigma_grid.size(); ++si) {
      out << ',' << fixed4(field(result.cell(si, ai)));
    }
    out << '\n';
  }
}

}  // namespace

void write_precision_table(std::ostream& out, const SimulationResult& result) {
  write_grid(out, result, [](const CellSummary& c) { return c.mean_precision; });
}

void write_recall_table(std::ostream& out, const SimulationResult& result) {
  write_grid(out, result, [](const CellSummary& c) { return c.mean_recall; });
}

void write_ru_csv(std::ostream& out, const std::vector<RuPoint>& points) {
  out << "sigma,risk,utility\n";
  for (const auto& p : points) {
    out << core::format_number(p.sigma) << ',' << core::format_number(p.risk) << ','
        << core::format_number(p.utility) << '\n';
  }
}

void write_calibration_summary(std::ostream& out,
                               const std::vector<masking::CalibrationTable>& tables) {
  out << "sigma";
  for (double p : masking::kSummaryProbabilities) out << ',' << core::format_number(p);
  out << ",sample_variance\n";
  for (const auto& t : tables) {
    out << core::format_number(t.sigma);
    for (double p : masking::kSummaryProbabilities) {
      out << ',' << fixed4(masking::empirical_quantile(t.deviations, p));
    }
    out << ',' << fixed4(masking::sample_variance(t.deviations)) << '\n';
  }
}

}  // namespace distlink::eval
