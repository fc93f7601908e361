#include "distlink/attack/common_subgraph.h"

#include <algorithm>
#include <string>

#include "distlink/core/error.h"
#include "distlink/graph/product_graph.h"

namespace distlink::attack {
namespace {

void check_order(const graph::LabeledWeightedGraph& g, const char* which) {
  if (g.size() > kMaxOracleOrder) {
    throw SizeLimitError(std::string("common subgraph oracle: ") + which +
                         " graph has " + std::to_string(g.size()) +
                         " vertices, limit is " + std::to_string(kMaxOracleOrder));
  }
}

bool is_witness(const graph::LabeledWeightedGraph& g1,
                const graph::LabeledWeightedGraph& g2,
                const graph::ApproxRelation& rel,
                const std::vector<std::size_t>& s,
                const std::vector<std::size_t>& t) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (g1.label(s[i]) != g2.label(t[i])) return false;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const bool e1 = g1.has_edge(s[i], s[j]);
      const bool e2 = g2.has_edge(t[i], t[j]);
      const bool ok = (e1 && e2 && rel(g1.weight(s[i], s[j]), g2.weight(t[i], t[j]))) ||
                      (!e1 && !e2);
      if (!ok) return false;
    }
  }
  return true;
}

// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<CommonSubgraphWitness> enumerate_common_subgraphs(
    const graph::LabeledWeightedGraph& g1, const graph::LabeledWeightedGraph& g2,
    const graph::ApproxRelation& rel, std::size_t k) {
  check_order(g1, "first");
  check_order(g2, "second");
  std::vector<CommonSubgraphWitness> out;
  for_each_subset(g1.size(), k, [&](const std::vector<std::size_t>& s) {
    for_each_subset(g2.size(), k, [&](const std::vector<std::size_t>& image) {
      std::vector<std::size_t> t = image;
      do {
        if (is_witness(g1, g2, rel, s, t)) {
          CommonSubgraphWitness w;
          w.source = s;
          w.image = image;
          for (std::size_t i = 0; i < k; ++i) w.phi.emplace_back(s[i], t[i]);
          out.push_back(std::move(w));
        }
      } while (std::next_permutation(t.begin(), t.end()));
    });
  });
  return out;
}

std::uint64_t count_k_cliques(const clique::SimpleGraph& g, std::size_t k) {
  std::uint64_t count = 0;
  std::vector<std::size_t> chosen;
  auto extend = [&](auto&& self, std::size_t next) -> void {
    if (chosen.size() == k) {
      ++count;
      return;
    }
    for (std::size_t v = next; v < g.size(); ++v) {
      const bool fits = std::all_of(chosen.begin(), chosen.end(),
                                    [&](std::size_t u) { return g.adjacent(u, v); });
      if (!fits) continue;
      chosen.push_back(v);
      self(self, v + 1);
      chosen.pop_back();
    }
  };
  extend(extend, 0);
  return count;
}

bool subgraph_clique_correspondence_holds(const graph::LabeledWeightedGraph& g1,
                                          const graph::LabeledWeightedGraph& g2,
                                          const graph::ApproxRelation& rel) {
  check_order(g1, "first");
  check_order(g2, "second");
  const auto product = graph::build_product_graph(g1, g2, rel);
  const std::size_t max_k = std::min(g1.size(), g2.size()) + 1;
  for (std::size_t k = 0; k <= max_k; ++k) {
    const auto witnesses = enumerate_common_subgraphs(g1, g2, rel, k);
    if (witnesses.size() != count_k_cliques(product.adjacency, k)) return false;
  }
  return true;
}

}  // namespace distlink::attack
