#include "distlink/clique/simple_graph.h"

#include <stdexcept>
#include <string>

namespace distlink::clique {

void SimpleGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) {
    throw std::invalid_argument("add_edge: vertex out of range");
  }
  if (u == v) {
    throw std::invalid_argument("add_edge: self-loop on vertex " +
                                std::to_string(u));
  }
  bits_[u * words_ + v / kWordBits] |= Word{1} << (v % kWordBits);
  bits_[v * words_ + u / kWordBits] |= Word{1} << (u % kWordBits);
}

std::size_t SimpleGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (Word w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::size_t SimpleGraph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

std::vector<std::size_t> SimpleGraph::neighbours(std::size_t v) const {
  std::vector<std::size_t> out;
  const auto r = row(v);
  for (std::size_t w = 0; w < words_; ++w) {
    for (Word bits = r[w]; bits; bits &= bits - 1) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
    }
  }
  return out;
}

void SimpleGraph::symmetrize_upper() {
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v : neighbours(u)) {
      if (v > u) bits_[v * words_ + u / kWordBits] |= Word{1} << (u % kWordBits);
    }
  }
}

bool is_clique(const SimpleGraph& g, std::span<const std::size_t> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.size()) return false;
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

}  // namespace distlink::clique
