#include "distlink/graph/labeled_graph.h"

#include <numeric>
#include <string>

#include "distlink/core/error.h"

namespace distlink::graph {

LabeledWeightedGraph::LabeledWeightedGraph(std::vector<std::string> label_schema,
                                           std::vector<VertexLabel> labels,
                                           core::DistanceMatrix weights,
                                           std::vector<std::size_t> record_ids)
    : label_schema_(std::move(label_schema)),
      labels_(std::move(labels)),
      weights_(std::move(weights)),
      record_ids_(std::move(record_ids)) {
  if (labels_.size() != weights_.size()) {
    throw InputError("graph: " + std::to_string(labels_.size()) +
                     " labels but a " + std::to_string(weights_.size()) +
                     "x" + std::to_string(weights_.size()) + " weight matrix");
  }
  for (const auto& l : labels_) {
    if (l.values.size() != label_schema_.size()) {
      throw InputError("graph: label arity differs from label schema");
    }
  }
  if (record_ids_.empty()) {
    record_ids_.resize(labels_.size());
    std::iota(record_ids_.begin(), record_ids_.end(), std::size_t{0});
  } else if (record_ids_.size() != labels_.size()) {
    throw InputError("graph: record id count differs from vertex count");
  }
}

LabeledWeightedGraph LabeledWeightedGraph::with_edges(
    std::vector<std::string> label_schema, std::vector<VertexLabel> labels,
    core::DistanceMatrix weights, std::vector<bool> edges) {
  LabeledWeightedGraph g(std::move(label_schema), std::move(labels),
                         std::move(weights));
  const std::size_t n = g.size();
  if (edges.size() != n * n) throw InputError("graph: edge mask has wrong size");
  for (std::size_t u = 0; u < n; ++u) {
    if (edges[u * n + u]) throw InputError("graph: self-loop in edge mask");
    for (std::size_t v = u + 1; v < n; ++v) {
      if (edges[u * n + v] != edges[v * n + u]) {
        throw InputError("graph: edge mask is not symmetric");
      }
    }
  }
  g.edges_ = std::move(edges);
  return g;
}

LabeledWeightedGraph build_graph(const core::MicrodataTable& table,
                                 const core::DistanceMatrix& matrix) {
  if (table.qi_attributes().empty()) {
    throw InputError("build_graph: table has no quasi-identifier attributes");
  }
  if (matrix.size() != table.size()) {
    throw InputError("build_graph: table has " + std::to_string(table.size()) +
                     " records but matrix is " + std::to_string(matrix.size()) +
                     "x" + std::to_string(matrix.size()));
  }
  std::vector<VertexLabel> labels;
  labels.reserve(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    labels.push_back({table.qi_values(r)});
  }
  return LabeledWeightedGraph(table.qi_attributes(), std::move(labels), matrix);
}

}  // namespace distlink::graph
