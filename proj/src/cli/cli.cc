#include "distlink/cli/cli.h"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "distlink/attack/attack.h"
#include "distlink/cli/manifest.h"
#include "distlink/clique/dimacs.h"
#include "distlink/core/error.h"
#include "distlink/core/io.h"
#include "distlink/eval/evaluate.h"
#include "distlink/eval/simulation.h"
#include "distlink/eval/synthetic.h"
#include "distlink/graph/product_graph.h"
#include "distlink/masking/calibration.h"

namespace distlink::cli {
namespace {

namespace fs = std::filesystem;

std::optional<std::uint64_t> parse_seed(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || text.empty()) {
    throw InputError(std::string(what) + ": '" + text + "' is not an unsigned integer");
  }
  return v;
}

std::optional<std::uint64_t> env_seed() {
  const char* env = std::getenv("DISTLINK_SEED");
  if (!env || !*env) return std::nullopt;
  return parse_seed(env, "DISTLINK_SEED");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory '" + dir.string() + "': " + ec.message());
}

template <typename Writer>
void write_file(const fs::path& path, Writer writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  writer(out);
  if (!out) throw InputError("error writing '" + path.string() + "'");
}

fs::path manifest_beside(const fs::path& output) {
  fs::path p = output;
  p += ".manifest.json";
  return p;
}

std::string sigma_tag(double sigma) { return core::format_number(sigma); }

struct Args {
  // distmat
  std::string in_path;
  std::string out_path;
  // attack
  std::string target_table;
  std::string target_matrix;
  std::string ident_table;
  std::string ident_matrix;
  std::vector<std::string> qi;
  std::vector<double> abs_eps;
  std::vector<double> band;
  std::string calibration_path;
  std::vector<double> alpha;
  std::string truth_path;
  std::string dimacs_path;
  bool all_maximum = false;
  unsigned threads = 1;
  std::uint64_t node_budget = clique::kDefaultNodeBudget;
  // calibrate / simulate / gendata
  std::vector<double> sigmas;
  std::size_t pairs = 1000;
  std::vector<double> region;
  std::string seed_text;
  std::string out_dir;
  std::string config_path;
  double sigma = 0.0;
};

std::optional<std::uint64_t> effective_seed(const Args& a) {
  if (!a.seed_text.empty()) return parse_seed(a.seed_text, "--seed");
  return env_seed();
}

int cmd_distmat(const Args& a, std::ostream& out, RunManifest& m) {
  const auto points = core::load_points(a.in_path);
  const core::DistanceMatrix d = core::distance_matrix(points);
  core::save_matrix(a.out_path, d);
  m.inputs = {a.in_path};
  m.outputs = {a.out_path};
  out << "points: " << d.size() << "\nwrote " << a.out_path << '\n';
  m.finished_at = utc_timestamp();
  m.save(manifest_beside(a.out_path));
  return kExitOk;
}

graph::ApproxRelation relation_from(const Args& a, std::vector<fs::path>& inputs) {
  const int given = (a.abs_eps.empty() ? 0 : 1) + (a.band.empty() ? 0 : 1) +
                    (a.calibration_path.empty() ? 0 : 1);
  if (given != 1) {
    throw InputError("give exactly one of --abs-eps, --band or --calibration");
  }
  if (!a.abs_eps.empty()) return graph::ApproxRelation::absolute(a.abs_eps.front());
  if (!a.band.empty()) return graph::ApproxRelation::quantile_band(a.band[0], a.band[1]);
  if (a.alpha.empty()) throw InputError("--calibration needs --alpha");
  inputs.push_back(a.calibration_path);
  const masking::CalibrationTable table = masking::load_calibration(a.calibration_path);
  return masking::band_from_table(table, a.alpha.front()).relation();
}

int cmd_attack(const Args& a, std::ostream& out, RunManifest& m) {
  if (a.qi.empty()) throw InputError("--qi must name at least one attribute");
  core::TableFormat format;
  format.qi_attributes = a.qi;
  m.inputs = {a.target_table, a.target_matrix, a.ident_table, a.ident_matrix};
  const attack::MetricMicrodata target{core::load_table(a.target_table, format),
                                       core::load_matrix(a.target_matrix)};
  const attack::MetricMicrodata ident{core::load_table(a.ident_table, format),
                                      core::load_matrix(a.ident_matrix)};
  const graph::ApproxRelation rel = relation_from(a, m.inputs);

  attack::AttackOptions options;
  options.clique.node_budget = a.node_budget;
  options.clique.threads = a.threads;
  options.product_threads = a.threads;
  options.enumerate_all = a.all_maximum;
  const attack::AttackResult result = attack::run_attack(target, ident, rel, options);

  out << "relation: " << rel.describe() << '\n';
  out << "product vertices: " << result.product_vertices << '\n';
  out << "product edges: " << result.product_edges << '\n';
  out << "clique size: " << result.clique_size << '\n';
  if (result.distance_unsupported) {
    out << "note: the clique has one vertex, so no distance supports the match\n";
  }
  out << "matches: " << result.matches.size() << '\n';
  for (const auto& match : result.matches) {
    out << "  target " << match.target_row + 1 << " -> ident " << match.ident_row + 1 << '\n';
  }
  if (result.maximum_clique_count) {
    out << "maximum cliques: " << *result.maximum_clique_count
        << (*result.enumeration_truncated ? " (enumeration truncated)" : "") << '\n';
    out << "matches in every maximum clique: " << result.stable_core->size() << '\n';
  }
  if (!a.truth_path.empty()) {
    m.inputs.push_back(a.truth_path);
    const eval::GroundTruth truth(attack::load_matches(a.truth_path));
    const eval::EvaluationReport r = eval::evaluate(result.matches, truth);
    out << "tp " << r.tp << " fp " << r.fp << " fn " << r.fn << '\n';
    out << "precision " << core::format_number(r.precision)
        << (r.precision_defined ? "" : " (no matches)") << '\n';
    out << "recall " << core::format_number(r.recall) << '\n';
  }
  if (!a.dimacs_path.empty()) {
    const graph::LabeledWeightedGraph g1 = graph::build_graph(target.table, target.matrix);
    const graph::LabeledWeightedGraph g2 = graph::build_graph(ident.table, ident.matrix);
    write_file(a.dimacs_path, [&](std::ostream& f) {
      graph::write_product_dimacs(f, graph::build_product_graph(g1, g2, rel, a.threads));
    });
    m.outputs.push_back(a.dimacs_path);
  }
  if (!a.out_path.empty()) {
    attack::save_matches(a.out_path, result.matches.matches());
    m.outputs.insert(m.outputs.begin(), a.out_path);
    m.finished_at = utc_timestamp();
    m.save(manifest_beside(a.out_path));
  }
  return kExitOk;
}

masking::Region region_from(const Args& a) {
  if (a.region.empty()) return masking::Region::germany();
  masking::Region r{a.region[0], a.region[1], a.region[2], a.region[3]};
  r.validate();
  return r;
}

int cmd_calibrate(const Args& a, std::ostream& out, RunManifest& m) {
  const masking::Region region = region_from(a);
  const std::uint64_t seed = m.seed.value_or(0);
  m.seed = seed;
  const fs::path dir = a.out_dir;
  ensure_dir(dir);
  std::vector<masking::CalibrationTable> tables;
  for (double sigma : a.sigmas) {
    tables.push_back(masking::calibrate(region, sigma, a.pairs, seed));
    const fs::path p = dir / ("calibration_" + sigma_tag(sigma) + ".json");
    masking::save_calibration(p, tables.back());
    m.outputs.push_back(p);
  }
  const fs::path summary = dir / "quantiles.csv";
  write_file(summary, [&](std::ostream& f) { eval::write_calibration_summary(f, tables); });
  m.outputs.push_back(summary);
  eval::write_calibration_summary(out, tables);
  m.finished_at = utc_timestamp();
  m.save(dir / "manifest.json");
  return kExitOk;
}

eval::SimulationConfig config_from(const Args& a, RunManifest& m) {
  eval::SimulationConfig config = eval::load_config(a.config_path);
  m.inputs.push_back(a.config_path);
  if (m.seed) {
    config.seed = *m.seed;
  } else {
    m.seed = config.seed;
  }
  m.config_json = eval::config_to_json(config);
  return config;
}

int cmd_simulate(const Args& a, std::ostream& out, RunManifest& m) {
  const eval::SimulationConfig config = config_from(a, m);
  const fs::path dir = a.out_dir;
  ensure_dir(dir);
  const eval::SimulationResult result = eval::run_simulation(config, a.threads);

  auto emit = [&](const char* name, auto writer) {
    const fs::path p = dir / name;
    write_file(p, writer);
    m.outputs.push_back(p);
  };
  emit("results.csv", [&](std::ostream& f) { eval::write_results_csv(f, result); });
  emit("precision_table.csv", [&](std::ostream& f) { eval::write_precision_table(f, result); });
  emit("recall_table.csv", [&](std::ostream& f) { eval::write_recall_table(f, result); });
  emit("calibration_summary.csv",
       [&](std::ostream& f) { eval::write_calibration_summary(f, result.calibrations); });
  bool have_ru_alpha = false;
  for (double alpha : config.alpha_grid) have_ru_alpha |= alpha == config.ru_alpha;
  if (have_ru_alpha) {
    const auto points = eval::ru_map_data(result, result.calibrations, config.ru_alpha);
    emit("ru_map.csv", [&](std::ostream& f) { eval::write_ru_csv(f, points); });
  }

  std::size_t exhausted = 0;
  for (const auto& row : result.rows) exhausted += row.budget_exhausted ? 1 : 0;
  out << "repetitions run: " << result.rows.size() << '\n';
  if (exhausted) out << "clique budget exhausted: " << exhausted << '\n';
  out << "mean precision\n";
  eval::write_precision_table(out, result);
  out << "mean recall\n";
  eval::write_recall_table(out, result);
  m.finished_at = utc_timestamp();
  m.save(dir / "manifest.json");
  return kExitOk;
}

int cmd_gendata(const Args& a, std::ostream& out, RunManifest& m) {
  const eval::SimulationConfig config = config_from(a, m);
  const fs::path dir = a.out_dir;
  ensure_dir(dir);
  const eval::SyntheticPair pair = eval::generate_synthetic_pair(config, a.sigma, config.seed);

  auto emit = [&](const char* name, auto writer) {
    const fs::path p = dir / name;
    write_file(p, writer);
    m.outputs.push_back(p);
  };
  emit("target.csv", [&](std::ostream& f) { core::write_table(f, pair.target.table); });
  emit("target_matrix.csv", [&](std::ostream& f) { core::write_matrix(f, pair.target.matrix); });
  emit("ident.csv", [&](std::ostream& f) { core::write_table(f, pair.ident.table); });
  emit("ident_matrix.csv", [&](std::ostream& f) { core::write_matrix(f, pair.ident.matrix); });
  emit("truth.csv",
       [&](std::ostream& f) { attack::write_matches(f, pair.truth.pairs()); });
  out << "target records: " << pair.target.table.size() << '\n'
      << "ident records: " << pair.ident.table.size() << '\n'
      << "common records: " << pair.truth.size() << '\n';
  m.finished_at = utc_timestamp();
  m.save(dir / "manifest.json");
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance-based linkage attacks on microdata with published distances",
               "distlink"};
  app.require_subcommand(1);
  Args a;

  auto* distmat = app.add_subcommand("distmat", "great-circle distance matrix of a points CSV");
  distmat->add_option("--in", a.in_path, "CSV with lon and lat columns")->required();
  distmat->add_option("--out", a.out_path, "matrix CSV to write")->required();

  auto* attack = app.add_subcommand("attack", "run the linkage attack on two files");
  attack->add_option("--target-table", a.target_table)->required();
  attack->add_option("--target-matrix", a.target_matrix)->required();
  attack->add_option("--ident-table", a.ident_table)->required();
  attack->add_option("--ident-matrix", a.ident_matrix)->required();
  attack->add_option("--qi", a.qi, "quasi-identifier columns")->required()->delimiter(',');
  attack->add_option("--abs-eps", a.abs_eps, "|w1 - w2| < eps, in km")->expected(1);
  attack->add_option("--band", a.band, "lo < w_ident - w_target < hi, in km")->expected(2);
  attack->add_option("--calibration", a.calibration_path, "calibration JSON");
  attack->add_option("--alpha", a.alpha, "band coverage for --calibration")->expected(1);
  attack->add_option("--out", a.out_path, "matches CSV to write");
  attack->add_option("--truth", a.truth_path, "true matches CSV, to score the attack");
  attack->add_option("--dimacs", a.dimacs_path, "also write the product graph");
  attack->add_flag("--all-maximum", a.all_maximum, "enumerate every maximum clique");
  attack->add_option("--threads", a.threads)->check(CLI::PositiveNumber);
  attack->add_option("--node-budget", a.node_budget)->check(CLI::PositiveNumber);

  auto* calibrate = app.add_subcommand("calibrate", "tabulate distance deviations under noise");
  calibrate->add_option("--sigma", a.sigmas, "noise levels in degrees")
      ->required()
      ->delimiter(',');
  calibrate->add_option("--pairs", a.pairs)->check(CLI::Range(2, 100'000'000));
  calibrate->add_option("--region", a.region, "lat_min,lat_max,lon_min,lon_max")
      ->delimiter(',')
      ->expected(4);
  calibrate->add_option("--seed", a.seed_text);
  calibrate->add_option("--out-dir", a.out_dir)->required();

  auto* simulate = app.add_subcommand("simulate", "run the simulation grid of a config");
  simulate->add_option("--config", a.config_path)->required();
  simulate->add_option("--out-dir", a.out_dir)->required();
  simulate->add_option("--threads", a.threads)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", a.seed_text);

  auto* gendata = app.add_subcommand("gendata", "write one synthetic target/ident pair");
  gendata->add_option("--config", a.config_path)->required();
  gendata->add_option("--sigma", a.sigma)->required()->check(CLI::NonNegativeNumber);
  gendata->add_option("--out-dir", a.out_dir)->required();
  gendata->add_option("--seed", a.seed_text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  RunManifest m;
  m.started_at = utc_timestamp();
  m.command = app.get_subcommands().front()->get_name();
  for (int i = 1; i < argc; ++i) m.args.emplace_back(argv[i]);
  try {
    m.seed = effective_seed(a);
    if (distmat->parsed()) return cmd_distmat(a, out, m);
    if (attack->parsed()) return cmd_attack(a, out, m);
    if (calibrate->parsed()) return cmd_calibrate(a, out, m);
    if (simulate->parsed()) return cmd_simulate(a, out, m);
    return cmd_gendata(a, out, m);
  } catch (const ResourceLimitError& e) {
    err << "distlink: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InputError& e) {
    err << "distlink: " << e.what() << '\n';
    return kExitInput;
  } catch (const SizeLimitError& e) {
    err << "distlink: " << e.what() << '\n';
    return kExitInput;
  } catch (const DegenerateError& e) {
    err << "distlink: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "distlink: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace distlink::cli
