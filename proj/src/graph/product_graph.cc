#include "distlink/graph/product_graph.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <thread>

#include "distlink/clique/dimacs.h"
#include "distlink/core/error.h"

namespace distlink::graph {
namespace {

bool pairs_adjacent(const LabeledWeightedGraph& target,
                    const LabeledWeightedGraph& ident, const ApproxRelation& rel,
                    const VertexPair& a, const VertexPair& b) {
  if (a.target == b.target || a.ident == b.ident) return false;
  const bool target_edge = target.has_edge(a.target, b.target);
  const bool ident_edge = ident.has_edge(a.ident, b.ident);
  if (target_edge && ident_edge) {
    return rel(target.weight(a.target, b.target), ident.weight(a.ident, b.ident));
  }
  return !target_edge && !ident_edge;
}

// Sets the bits (i, j) for j > i of every row i in [first, last).
void fill_rows(const LabeledWeightedGraph& target, const LabeledWeightedGraph& ident,
               const ApproxRelation& rel, ProductGraph& product, std::size_t first,
               std::size_t last) {
  constexpr std::size_t kBits = clique::SimpleGraph::kWordBits;
  const auto& vs = product.vertices;
  for (std::size_t i = first; i < last; ++i) {
    auto row = product.adjacency.mutable_row(i);
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (pairs_adjacent(target, ident, rel, vs[i], vs[j])) {
        row[j / kBits] |= clique::SimpleGraph::Word{1} << (j % kBits);
      }
    }
  }
}

}  // namespace

ProductGraph build_product_graph(const LabeledWeightedGraph& target,
                                 const LabeledWeightedGraph& ident,
                                 const ApproxRelation& rel, unsigned threads) {
  if (target.label_schema() != ident.label_schema()) {
    throw InputError("build_product_graph: target and identification graphs "
                     "use different quasi-identifier schemas");
  }
  std::map<VertexLabel, std::vector<std::size_t>> target_by_label;
  for (std::size_t v = 0; v < target.size(); ++v) {
    target_by_label[target.label(v)].push_back(v);
  }

  ProductGraph product;
  for (std::size_t w = 0; w < ident.size(); ++w) {
    const auto it = target_by_label.find(ident.label(w));
    if (it == target_by_label.end()) continue;
    for (std::size_t v : it->second) product.vertices.push_back({v, w});
  }
  const std::size_t n = product.vertices.size();
  product.adjacency = clique::SimpleGraph(n);

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    fill_rows(target, ident, rel, product, 0, n);
  } else {
    // Interleaved blocks balance the triangular workload.
    constexpr std::size_t kBlock = 64;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t b = t * kBlock; b < n; b += threads * kBlock) {
          fill_rows(target, ident, rel, product, b, std::min(n, b + kBlock));
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  product.adjacency.symmetrize_upper();
  return product;
}

std::size_t product_vertex_count_check(const LabeledWeightedGraph& target,
                                       const LabeledWeightedGraph& ident) {
  std::map<VertexLabel, std::size_t> target_counts;
  std::map<VertexLabel, std::size_t> ident_counts;
  for (const auto& l : target.labels()) ++target_counts[l];
  for (const auto& l : ident.labels()) ++ident_counts[l];
  std::size_t total = 0;
  for (const auto& [label, count] : target_counts) {
    const auto it = ident_counts.find(label);
    if (it != ident_counts.end()) total += count * it->second;
  }
  return total;
}

void write_product_dimacs(std::ostream& out, const ProductGraph& product) {
  out << "c product graph; vertex k = (target row, identification row)\n";
  for (std::size_t k = 0; k < product.size(); ++k) {
    out << "c v " << k + 1 << ' ' << product.vertices[k].target + 1 << ' '
        << product.vertices[k].ident + 1 << '\n';
  }
  clique::write_dimacs(out, product.adjacency);
}

}  // namespace distlink::graph
