#ifndef DISTLINK_ATTACK_COMMON_SUBGRAPH_H_
#define DISTLINK_ATTACK_COMMON_SUBGRAPH_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "distlink/clique/simple_graph.h"
#include "distlink/graph/approx_relation.h"
#include "distlink/graph/labeled_graph.h"

namespace distlink::attack {

// Brute-force counterpart of the clique route, used to check the
// subgraph/clique correspondence on small instances.

inline constexpr std::size_t kMaxOracleOrder = 7;

// Subsets S of the first graph's vertices and T of the second's with a
// bijection phi: S -> T. `phi` holds (s, phi(s)) sorted by s.
struct CommonSubgraphWitness {
  std::vector<std::size_t> source;  // S, ascending
  std::vector<std::size_t> image;   // T, ascending
  std::vector<std::pair<std::size_t, std::size_t>> phi;

  friend bool operator==(const CommonSubgraphWitness&,
                         const CommonSubgraphWitness&) = default;
};

// Every approximate common subgraph of order exactly k: phi preserves labels,
// and for all s1 != s2 in S either both edges exist with weights related by
// `rel` (target weight first) or neither edge exists. Enumerates all
// injections directly. Throws SizeLimitError if either graph has more than 7
// vertices.
std::vector<CommonSubgraphWitness> enumerate_common_subgraphs(
    const graph::LabeledWeightedGraph& g1, const graph::LabeledWeightedGraph& g2,
    const graph::ApproxRelation& rel, std::size_t k);

// Number of k-cliques of g (k = 0 counts the empty set), by extending vertex
// subsets in ascending order.
std::uint64_t count_k_cliques(const clique::SimpleGraph& g, std::size_t k);

// True iff for every k the number of order-k approximate common subgraphs
// equals the number of k-cliques of the product graph. Throws SizeLimitError
// above order 7.
bool subgraph_clique_correspondence_holds(const graph::LabeledWeightedGraph& g1,
                                          const graph::LabeledWeightedGraph& g2,
                                          const graph::ApproxRelation& rel);

}  // namespace distlink::attack

#endif  // DISTLINK_ATTACK_COMMON_SUBGRAPH_H_
