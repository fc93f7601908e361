#ifndef DISTLINK_GRAPH_LABELED_GRAPH_H_
#define DISTLINK_GRAPH_LABELED_GRAPH_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "distlink/core/distance_matrix.h"
#include "distlink/core/microdata.h"

namespace distlink::graph {

// Tuple of quasi-identifier values. Equality is componentwise and exact.
struct VertexLabel {
  std::vector<std::string> values;

  friend auto operator<=>(const VertexLabel&, const VertexLabel&) = default;
  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

// Vertex-labelled, edge-weighted graph. Graphs built from microdata are
// complete; `with_edges` exists so that the non-edge clause of the product
// construction can be exercised on artificial graphs.
class LabeledWeightedGraph {
 public:
  LabeledWeightedGraph() = default;

  // Complete graph. Throws InputError if the label count differs from the
  // matrix size or label arities differ from `label_schema`.
  LabeledWeightedGraph(std::vector<std::string> label_schema,
                       std::vector<VertexLabel> labels,
                       core::DistanceMatrix weights,
                       std::vector<std::size_t> record_ids = {});

  // Arbitrary simple graph; `edges` is an n*n row-major symmetric mask with a
  // false diagonal. Weights of absent edges are ignored.
  static LabeledWeightedGraph with_edges(std::vector<std::string> label_schema,
                                         std::vector<VertexLabel> labels,
                                         core::DistanceMatrix weights,
                                         std::vector<bool> edges);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& label_schema() const { return label_schema_; }
  const VertexLabel& label(std::size_t v) const { return labels_[v]; }
  const std::vector<VertexLabel>& labels() const { return labels_; }
  const core::DistanceMatrix& weights() const { return weights_; }
  double weight(std::size_t u, std::size_t v) const { return weights_.at(u, v); }
  std::size_t record_id(std::size_t v) const { return record_ids_[v]; }
  bool complete() const { return !edges_.has_value(); }

  bool has_edge(std::size_t u, std::size_t v) const {
    if (u == v) return false;
    return !edges_ || (*edges_)[u * size() + v];
  }

 private:
  std::vector<std::string> label_schema_;
  std::vector<VertexLabel> labels_;
  core::DistanceMatrix weights_;
  std::vector<std::size_t> record_ids_;
  std::optional<std::vector<bool>> edges_;
};

// Vertex i is labelled with record i's quasi-identifier values and edge ij is
// weighted with matrix(i, j). Throws InputError on dimension mismatch or when
// the table designates no quasi-identifiers.
LabeledWeightedGraph build_graph(const core::MicrodataTable& table,
                                 const core::DistanceMatrix& matrix);

}  // namespace distlink::graph

#endif  // DISTLINK_GRAPH_LABELED_GRAPH_H_
