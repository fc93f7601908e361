#ifndef DISTLINK_EVAL_SIMULATION_H_
#define DISTLINK_EVAL_SIMULATION_H_

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "distlink/eval/evaluate.h"
#include "distlink/eval/synthetic.h"
#include "distlink/graph/approx_relation.h"
#include "distlink/masking/calibration.h"

namespace distlink::eval {

struct SimulationRow {
  std::size_t sigma_index = 0;
  std::size_t alpha_index = 0;
  std::size_t rep = 0;
  double sigma = 0.0;
  double alpha = 0.0;
  EvaluationReport report;
  // The clique search ran out of budget; `report` is empty and the row is
  // left out of the cell means.
  bool budget_exhausted = false;
  std::size_t product_vertices = 0;
  std::size_t clique_size = 0;
  // Fraction of edges between true common records accepted by the band.
  double edge_detection_rate = 0.0;
};

struct CellSummary {
  double sigma = 0.0;
  double alpha = 0.0;
  double mean_precision = 0.0;  // NaN if every repetition ran out of budget
  double mean_recall = 0.0;
  std::size_t completed = 0;
  std::size_t budget_exhausted = 0;
};

struct SimulationResult {
  std::vector<double> sigma_grid;
  std::vector<double> alpha_grid;
  // Ordered by (sigma index, alpha index, repetition).
  std::vector<SimulationRow> rows;
  // cells[sigma_index * alpha_grid.size() + alpha_index]
  std::vector<CellSummary> cells;
  // One per sigma (the cached calibration, or the repetition-0 calibration
  // when recalibrating per repetition).
  std::vector<masking::CalibrationTable> calibrations;

  const CellSummary& cell(std::size_t sigma_index, std::size_t alpha_index) const {
    return cells[sigma_index * alpha_grid.size() + alpha_index];
  }
};

// For every (sigma, alpha, repetition): generate a synthetic pair, take the
// quantile band at alpha from the sigma calibration, run the attack and score
// it. Each repetition draws from a stream keyed by (seed, sigma index, alpha
// index, repetition), so results are identical for any thread count.
SimulationResult run_simulation(const SimulationConfig& config, unsigned threads = 1);

// Fraction of pairs of ground-truth matches whose two edges satisfy `rel`.
double edge_detection_rate(const SyntheticPair& pair, const graph::ApproxRelation& rel);

struct RuPoint {
  double sigma = 0.0;
  double risk = 0.0;     // mean precision at (sigma, alpha)
  double utility = 0.0;  // 1 / variance of the sigma calibration
};

// One point per sigma of the grid. `calibrations` must hold one table per
// sigma; throws InputError if alpha is not in the simulation's alpha grid.
std::vector<RuPoint> ru_map_data(const SimulationResult& result,
                                 const std::vector<masking::CalibrationTable>& calibrations,
                                 double alpha);

// sigma,alpha,rep,tp,fp,fn,precision,recall,precision_defined,budget_exhausted
void write_results_csv(std::ostream& out, const SimulationResult& result);
// alpha rows x sigma columns of mean precision / mean recall.
void write_precision_table(std::ostream& out, const SimulationResult& result);
void write_recall_table(std::ostream& out, const SimulationResult& result);
// sigma,risk,utility
void write_ru_csv(std::ostream& out, const std::vector<RuPoint>& points);
// sigma, quantile columns, sample_variance
void write_calibration_summary(std::ostream& out,
                               const std::vector<masking::CalibrationTable>& tables);

}  // namespace distlink::eval

#endif  // DISTLINK_EVAL_SIMULATION_H_
