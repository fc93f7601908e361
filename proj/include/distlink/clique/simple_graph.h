#ifndef DISTLINK_CLIQUE_SIMPLE_GRAPH_H_
#define DISTLINK_CLIQUE_SIMPLE_GRAPH_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace distlink::clique {

// Simple undirected graph with one adjacency bitset row per vertex.
// Symmetric and irreflexive by construction.
class SimpleGraph {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n)
      : n_(n), words_((n + kWordBits - 1) / kWordBits), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  // Throws std::invalid_argument on a self-loop or out-of-range vertex.
  void add_edge(std::size_t u, std::size_t v);

  bool adjacent(std::size_t u, std::size_t v) const {
    return (bits_[u * words_ + v / kWordBits] >> (v % kWordBits)) & 1u;
  }
  std::span<const Word> row(std::size_t v) const {
    return {bits_.data() + v * words_, words_};
  }
  std::span<Word> mutable_row(std::size_t v) {
    return {bits_.data() + v * words_, words_};
  }

  std::size_t degree(std::size_t v) const;
  std::size_t edge_count() const;
  std::vector<std::size_t> neighbours(std::size_t v) const;

  // Mirrors every set bit (u, v) to (v, u). Used after rows were filled
  // independently for v > u only.
  void symmetrize_upper();

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

bool is_clique(const SimpleGraph& g, std::span<const std::size_t> vertices);

}  // namespace distlink::clique

#endif  // DISTLINK_CLIQUE_SIMPLE_GRAPH_H_
