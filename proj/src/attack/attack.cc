#include "distlink/attack/attack.h"

#include <algorithm>
#include <iterator>
#include <map>

#include "distlink/core/error.h"

namespace distlink::attack {

MatchList extract_matches(const graph::ProductGraph& product,
                          const graph::LabeledWeightedGraph& target,
                          const graph::LabeledWeightedGraph& ident,
                          const std::vector<std::size_t>& clique_vertices) {
  std::vector<Match> matches;
  matches.reserve(clique_vertices.size());
  for (std::size_t k : clique_vertices) {
    const auto& pair = product.vertices.at(k);
    matches.push_back({target.record_id(pair.target), ident.record_id(pair.ident)});
  }
  return MatchList(std::move(matches));
}

AttackResult run_attack(const graph::LabeledWeightedGraph& target,
                        const graph::LabeledWeightedGraph& ident,
                        const graph::ApproxRelation& rel,
                        const AttackOptions& options) {
  const graph::ProductGraph product =
      graph::build_product_graph(target, ident, rel, options.product_threads);

  AttackResult result;
  result.product_vertices = product.size();
  result.product_edges = product.adjacency.edge_count();

  const clique::CliqueResult best = clique::max_clique(product.adjacency, options.clique);
  result.clique_size = best.size();
  result.clique_stats = best.stats;
  result.distance_unsupported = best.size() == 1;
  result.matches = extract_matches(product, target, ident, best.vertices);

  if (options.enumerate_all) {
    const clique::MaximumCliqueSet all = clique::all_maximum_cliques(
        product.adjacency, options.clique, options.enumeration_limit);
    result.maximum_clique_count = all.cliques.size();
    result.enumeration_truncated = all.truncated;
    std::vector<std::size_t> core;
    if (!all.cliques.empty()) core = all.cliques.front();
    for (const auto& c : all.cliques) {
      std::vector<std::size_t> kept;
      std::set_intersection(core.begin(), core.end(), c.begin(), c.end(),
                            std::back_inserter(kept));
      core = std::move(kept);
    }
    result.stable_core = extract_matches(product, target, ident, core);
  }
  return result;
}

AttackResult run_attack(const MetricMicrodata& target, const MetricMicrodata& ident,
                        const graph::ApproxRelation& rel,
                        const AttackOptions& options) {
  if (target.table.qi_attributes() != ident.table.qi_attributes()) {
    throw InputError("run_attack: target and identification tables designate "
                     "different quasi-identifiers");
  }
  const auto target_graph = graph::build_graph(target.table, target.matrix);
  const auto ident_graph = graph::build_graph(ident.table, ident.matrix);
  return run_attack(target_graph, ident_graph, rel, options);
}

std::vector<Match> classical_linkage(const graph::LabeledWeightedGraph& target,
                                     const graph::LabeledWeightedGraph& ident) {
  if (target.label_schema() != ident.label_schema()) {
    throw InputError("classical_linkage: different quasi-identifier schemas");
  }
  std::map<graph::VertexLabel, std::vector<std::size_t>> by_label;
  for (std::size_t v = 0; v < target.size(); ++v) {
    by_label[target.label(v)].push_back(v);
  }
  std::vector<Match> out;
  for (std::size_t w = 0; w < ident.size(); ++w) {
    const auto it = by_label.find(ident.label(w));
    if (it == by_label.end()) continue;
    for (std::size_t v : it->second) {
      out.push_back({target.record_id(v), ident.record_id(w)});
    }
  }
  return out;
}

std::vector<Match> classical_linkage(const core::MicrodataTable& target,
                                     const core::MicrodataTable& ident) {
  if (target.qi_attributes() != ident.qi_attributes()) {
    throw InputError("classical_linkage: different quasi-identifiers");
  }
  std::map<std::vector<std::string>, std::vector<std::size_t>> by_label;
  for (std::size_t r = 0; r < target.size(); ++r) {
    by_label[target.qi_values(r)].push_back(r);
  }
  std::vector<Match> out;
  for (std::size_t w = 0; w < ident.size(); ++w) {
    const auto it = by_label.find(ident.qi_values(w));
    if (it == by_label.end()) continue;
    for (std::size_t v : it->second) out.push_back({v, w});
  }
  return out;
}

}  // namespace distlink::attack
