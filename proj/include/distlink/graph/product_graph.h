#ifndef DISTLINK_GRAPH_PRODUCT_GRAPH_H_
#define DISTLINK_GRAPH_PRODUCT_GRAPH_H_

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "distlink/clique/simple_graph.h"
#include "distlink/graph/approx_relation.h"
#include "distlink/graph/labeled_graph.h"

namespace distlink::graph {

struct VertexPair {
  std::size_t target = 0;
  std::size_t ident = 0;

  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

// Simple undirected graph over the label-matching vertex pairs of a target and
// an identification graph. Two pairs are adjacent when they share neither
// endpoint and their edge weights agree under the relation (or neither edge
// exists). Its k-cliques are exactly the approximate common subgraphs of
// order k.
struct ProductGraph {
  // Ordered by identification vertex, then target vertex. For the poets
  // example this reproduces the published numbering of the eleven matches.
  std::vector<VertexPair> vertices;
  clique::SimpleGraph adjacency;

  std::size_t size() const { return vertices.size(); }
};

// Throws InputError when the label schemas differ. `threads` > 1 splits rows
// across workers; the result is identical to the sequential build.
ProductGraph build_product_graph(const LabeledWeightedGraph& target,
                                 const LabeledWeightedGraph& ident,
                                 const ApproxRelation& rel,
                                 unsigned threads = 1);

// Sum over labels of count_target(label) * count_ident(label), computed by
// tallying label multiplicities; equals the product graph's vertex count.
std::size_t product_vertex_count_check(const LabeledWeightedGraph& target,
                                       const LabeledWeightedGraph& ident);

// DIMACS export (1-based vertex numbers follow ProductGraph::vertices).
void write_product_dimacs(std::ostream& out, const ProductGraph& product);

}  // namespace distlink::graph

#endif  // DISTLINK_GRAPH_PRODUCT_GRAPH_H_
