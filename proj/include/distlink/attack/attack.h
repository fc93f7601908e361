#ifndef DISTLINK_ATTACK_ATTACK_H_
#define DISTLINK_ATTACK_ATTACK_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "distlink/attack/match_list.h"
#include "distlink/clique/max_clique.h"
#include "distlink/core/distance_matrix.h"
#include "distlink/core/microdata.h"
#include "distlink/graph/approx_relation.h"
#include "distlink/graph/labeled_graph.h"
#include "distlink/graph/product_graph.h"

namespace distlink::attack {

// A microdata table together with its published (or computed) distances.
struct MetricMicrodata {
  core::MicrodataTable table;
  core::DistanceMatrix matrix;
};

struct AttackOptions {
  clique::CliqueOptions clique;
  // Threads used to build the product graph (output is identical for any
  // value).
  unsigned product_threads = 1;
  // Also enumerate every maximum clique and report the matches common to all
  // of them.
  bool enumerate_all = false;
  std::size_t enumeration_limit = 10'000;
};

struct AttackResult {
  MatchList matches;
  std::size_t product_vertices = 0;
  std::size_t product_edges = 0;
  std::size_t clique_size = 0;
  // The clique has a single vertex, i.e. one label match with no distance
  // corroboration at all.
  bool distance_unsupported = false;
  clique::CliqueStats clique_stats;

  // Filled only with AttackOptions::enumerate_all.
  std::optional<std::size_t> maximum_clique_count;
  std::optional<bool> enumeration_truncated;
  // Matches present in every maximum clique.
  std::optional<MatchList> stable_core;
};

// Matches encoded by a set of product-graph vertices, translated to table
// rows through the graphs' record ids.
MatchList extract_matches(const graph::ProductGraph& product,
                          const graph::LabeledWeightedGraph& target,
                          const graph::LabeledWeightedGraph& ident,
                          const std::vector<std::size_t>& clique_vertices);

// Product graph -> maximum clique -> matches, on prebuilt graphs.
AttackResult run_attack(const graph::LabeledWeightedGraph& target,
                        const graph::LabeledWeightedGraph& ident,
                        const graph::ApproxRelation& rel,
                        const AttackOptions& options = {});

// The complete linkage attack: build both graphs from the tables' designated
// quasi-identifiers, build the product graph, find a maximum clique and
// extract the matches.
AttackResult run_attack(const MetricMicrodata& target, const MetricMicrodata& ident,
                        const graph::ApproxRelation& rel,
                        const AttackOptions& options = {});

// Every label-coinciding (target row, identification row) pair, i.e. the
// result of a linkage attack that ignores distances. Same order as the
// product graph's vertices.
std::vector<Match> classical_linkage(const graph::LabeledWeightedGraph& target,
                                     const graph::LabeledWeightedGraph& ident);
std::vector<Match> classical_linkage(const core::MicrodataTable& target,
                                     const core::MicrodataTable& ident);

}  // namespace distlink::attack

#endif  // DISTLINK_ATTACK_ATTACK_H_
