#ifndef DISTLINK_CLIQUE_MAX_CLIQUE_H_
#define DISTLINK_CLIQUE_MAX_CLIQUE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "distlink/clique/simple_graph.h"

namespace distlink::clique {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

struct CliqueOptions {
  // Branch nodes allowed before the search gives up with ResourceLimitError.
  std::uint64_t node_budget = kDefaultNodeBudget;
  // 1 = sequential and deterministic. More threads split the root branching;
  // the size is still optimal but the returned set may differ between runs.
  unsigned threads = 1;
};

struct CliqueStats {
  std::uint64_t nodes = 0;
  double elapsed_seconds = 0.0;
};

struct CliqueResult {
  std::vector<std::size_t> vertices;  // sorted ascending
  CliqueStats stats;

  std::size_t size() const { return vertices.size(); }
};

// Exact maximum clique by branch and bound over bitset rows, bounding each
// node with a greedy colouring of the candidate set. Vertices are initially
// ordered by descending degree, ties by ascending index; in sequential mode
// the first optimum found under that ordering is returned.
//
// Throws ResourceLimitError when the node budget is exhausted.
CliqueResult max_clique(const SimpleGraph& g, const CliqueOptions& options = {});

struct MaximumCliqueSet {
  std::vector<std::vector<std::size_t>> cliques;  // each sorted; list sorted
  bool truncated = false;                         // hit `limit`
  CliqueStats stats;
};

// Every maximum clique of g, up to `limit` of them.
MaximumCliqueSet all_maximum_cliques(const SimpleGraph& g,
                                     const CliqueOptions& options = {},
                                     std::size_t limit = 10'000);

inline constexpr std::size_t kBruteForceMaxVertices = 25;

// Reference implementation: extends every clique one vertex at a time with no
// bounding at all. Throws SizeLimitError for graphs above 25 vertices.
CliqueResult brute_force_max_clique(const SimpleGraph& g);

// Number of colour classes used by sequential greedy colouring of the
// candidates (in the given order). An upper bound on the clique number of the
// induced subgraph.
std::size_t greedy_coloring_bound(const SimpleGraph& g,
                                  std::span<const std::size_t> candidates);

}  // namespace distlink::clique

#endif  // DISTLINK_CLIQUE_MAX_CLIQUE_H_
