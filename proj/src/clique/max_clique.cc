#include "distlink/clique/max_clique.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "distlink/core/error.h"

namespace distlink::clique {
namespace {

using Word = SimpleGraph::Word;
using Clock = std::chrono::steady_clock;
constexpr std::size_t kBits = SimpleGraph::kWordBits;

bool any(const std::vector<Word>& s) {
  return std::any_of(s.begin(), s.end(), [](Word w) { return w != 0; });
}

void reset_bit(std::vector<Word>& s, std::size_t v) {
  s[v / kBits] &= ~(Word{1} << (v % kBits));
}

void set_bit(std::vector<Word>& s, std::size_t v) {
  s[v / kBits] |= Word{1} << (v % kBits);
}

std::size_t lowest(const std::vector<Word>& s) {
  for (std::size_t w = 0; w < s.size(); ++w) {
    if (s[w]) return w * kBits + static_cast<std::size_t>(std::countr_zero(s[w]));
  }
  return s.size() * kBits;
}

// The input graph relabelled so that vertex k is the k-th vertex of the
// (descending degree, ascending index) order.
struct OrderedGraph {
  std::vector<std::size_t> original;  // new index -> input index
  std::size_t words = 0;
  std::vector<Word> adj;

  explicit OrderedGraph(const SimpleGraph& g) : original(g.size()) {
    const std::size_t n = g.size();
    std::vector<std::size_t> degree(n);
    for (std::size_t v = 0; v < n; ++v) degree[v] = g.degree(v);
    std::iota(original.begin(), original.end(), std::size_t{0});
    std::stable_sort(original.begin(), original.end(),
                     [&](std::size_t a, std::size_t b) {
                       return degree[a] > degree[b];
                     });
    std::vector<std::size_t> position(n);
    for (std::size_t k = 0; k < n; ++k) position[original[k]] = k;
    words = (n + kBits - 1) / kBits;
    adj.assign(n * words, 0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t u : g.neighbours(original[k])) {
        const std::size_t j = position[u];
        adj[k * words + j / kBits] |= Word{1} << (j % kBits);
      }
    }
  }

  std::size_t size() const { return original.size(); }
  const Word* row(std::size_t v) const { return adj.data() + v * words; }

  std::vector<std::size_t> to_input(const std::vector<std::size_t>& c) const {
    std::vector<std::size_t> out;
    out.reserve(c.size());
    for (std::size_t v : c) out.push_back(original[v]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

struct SharedState {
  std::atomic<std::uint64_t> nodes{0};
  std::uint64_t budget = kDefaultNodeBudget;
  // Largest clique size found by any worker (parallel mode only).
  std::atomic<std::size_t> best_size{0};
  std::mutex mutex;
  std::vector<std::size_t> best;
};

class Search {
 public:
  enum class Mode { kMaximum, kEnumerate };

  Search(const OrderedGraph& g, SharedState& shared, Mode mode)
      : g_(g), shared_(shared), mode_(mode) {}

  void set_target(std::size_t omega, std::size_t limit) {
    omega_ = omega;
    limit_ = limit;
  }

  void expand(std::vector<Word> candidates, std::vector<std::size_t>& clique) {
    tick();
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    colour_sort(candidates, order, colour);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (clique.size() + colour[i] <= bound()) return;
      if (truncated_) return;
      const std::size_t v = order[i];
      clique.push_back(v);
      std::vector<Word> next(g_.words);
      const Word* nv = g_.row(v);
      for (std::size_t w = 0; w < g_.words; ++w) next[w] = candidates[w] & nv[w];
      if (any(next)) {
        expand(std::move(next), clique);
      } else {
        leaf(clique);
      }
      clique.pop_back();
      reset_bit(candidates, v);
    }
  }

  // Greedy colouring of `candidates` in index order, emitting vertices grouped
  // by colour class with nondecreasing colour numbers.
  void colour_sort(std::vector<Word> uncoloured, std::vector<std::size_t>& order,
                   std::vector<std::size_t>& colour) const {
    std::size_t k = 0;
    std::vector<Word> q(g_.words);
    while (any(uncoloured)) {
      ++k;
      q = uncoloured;
      for (std::size_t v = lowest(q); v < g_.size(); v = lowest(q)) {
        reset_bit(uncoloured, v);
        reset_bit(q, v);
        const Word* nv = g_.row(v);
        for (std::size_t w = 0; w < g_.words; ++w) q[w] &= ~nv[w];
        order.push_back(v);
        colour.push_back(k);
      }
    }
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::vector<std::vector<std::size_t>>& found() { return found_; }
  bool truncated() const { return truncated_; }

 private:
  void tick() {
    const auto n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > shared_.budget) {
      throw ResourceLimitError("maximum clique search exceeded node budget of " +
                               std::to_string(shared_.budget));
    }
  }

  // A branch survives only if it can still beat (or, when enumerating, reach)
  // the returned size.
  std::size_t bound() const {
    if (mode_ == Mode::kEnumerate) return omega_ - 1;
    return std::max(best_.size(),
                    shared_.best_size.load(std::memory_order_relaxed));
  }

  void leaf(const std::vector<std::size_t>& clique) {
    if (mode_ == Mode::kEnumerate) {
      if (clique.size() == omega_) {
        if (found_.size() >= limit_) {
          truncated_ = true;
          return;
        }
        found_.push_back(clique);
      }
      return;
    }
    if (clique.size() <= bound()) return;
    best_ = clique;
    std::size_t seen = shared_.best_size.load(std::memory_order_relaxed);
    while (seen < best_.size() &&
           !shared_.best_size.compare_exchange_weak(seen, best_.size())) {
    }
    std::lock_guard lock(shared_.mutex);
    if (best_.size() > shared_.best.size()) shared_.best = best_;
  }

  const OrderedGraph& g_;
  SharedState& shared_;
  Mode mode_;
  std::size_t omega_ = 0;
  std::size_t limit_ = 0;
  bool truncated_ = false;
  std::vector<std::size_t> best_;
  std::vector<std::vector<std::size_t>> found_;
};

std::vector<Word> full_set(std::size_t n) {
  std::vector<Word> s((n + kBits - 1) / kBits, 0);
  for (std::size_t v = 0; v < n; ++v) set_bit(s, v);
  return s;
}

// Explores the root branches in parallel. Branch i (taken from the end of the
// root colouring, as the sequential search does) sees only the candidates
// that precede it in that colouring.
void parallel_root(const OrderedGraph& g, SharedState& shared, unsigned threads) {
  Search root(g, shared, Search::Mode::kMaximum);
  std::vector<std::size_t> order;
  std::vector<std::size_t> colour;
  root.colour_sort(full_set(g.size()), order, colour);

  // Branches are taken from the back of the colour order, as in the
  // sequential search.
  std::atomic<std::size_t> taken{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      Search search(g, shared, Search::Mode::kMaximum);
      for (std::size_t k = taken++; k < order.size(); k = taken++) {
        const std::size_t idx = order.size() - 1 - k;
        if (colour[idx] <= shared.best_size.load()) continue;
        const std::size_t v = order[idx];
        std::vector<Word> cand((g.size() + kBits - 1) / kBits, 0);
        for (std::size_t j = 0; j < idx; ++j) set_bit(cand, order[j]);
        const Word* nv = g.row(v);
        for (std::size_t w = 0; w < cand.size(); ++w) cand[w] &= nv[w];
        std::vector<std::size_t> clique{v};
        if (any(cand)) {
          search.expand(std::move(cand), clique);
        } else {
          std::lock_guard lock(shared.mutex);
          if (shared.best.empty()) shared.best = clique;
          std::size_t seen = 0;
          shared.best_size.compare_exchange_strong(seen, 1);
        }
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

CliqueResult max_clique(const SimpleGraph& g, const CliqueOptions& options) {
  const auto start = Clock::now();
  CliqueResult result;
  if (g.size() == 0) return result;

  const OrderedGraph ordered(g);
  SharedState shared;
  shared.budget = options.node_budget;
  if (options.threads > 1) {
    parallel_root(ordered, shared, options.threads);
    result.vertices = ordered.to_input(shared.best);
  } else {
    Search search(ordered, shared, Search::Mode::kMaximum);
    std::vector<std::size_t> clique;
    search.expand(full_set(ordered.size()), clique);
    result.vertices = ordered.to_input(search.best());
  }
  result.stats.nodes = shared.nodes.load();
  result.stats.elapsed_seconds = seconds_since(start);
  return result;
}

MaximumCliqueSet all_maximum_cliques(const SimpleGraph& g,
                                     const CliqueOptions& options,
                                     std::size_t limit) {
  const auto start = Clock::now();
  MaximumCliqueSet out;
  if (g.size() == 0) return out;
  CliqueOptions sequential = options;
  sequential.threads = 1;
  const CliqueResult first = max_clique(g, sequential);

  const OrderedGraph ordered(g);
  SharedState shared;
  shared.budget = options.node_budget;
  shared.nodes = first.stats.nodes;
  Search search(ordered, shared, Search::Mode::kEnumerate);
  search.set_target(first.size(), limit);
  std::vector<std::size_t> clique;
  search.expand(full_set(ordered.size()), clique);

  for (const auto& c : search.found()) out.cliques.push_back(ordered.to_input(c));
  std::sort(out.cliques.begin(), out.cliques.end());
  out.truncated = search.truncated();
  out.stats.nodes = shared.nodes.load();
  out.stats.elapsed_seconds = seconds_since(start);
  return out;
}

CliqueResult brute_force_max_clique(const SimpleGraph& g) {
  const std::size_t n = g.size();
  if (n > kBruteForceMaxVertices) {
    throw SizeLimitError("brute_force_max_clique: " + std::to_string(n) +
                         " vertices exceeds the limit of " +
                         std::to_string(kBruteForceMaxVertices));
  }
  const auto start = Clock::now();
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (g.adjacent(u, v)) adj[u] |= std::uint32_t{1} << v;
    }
  }
  std::uint32_t best = 0;
  int best_size = 0;
  std::uint64_t nodes = 0;
  // Every clique is visited exactly once, built in ascending vertex order.
  auto extend = [&](auto&& self, std::uint32_t clique, int size,
                    std::uint32_t candidates) -> void {
    ++nodes;
    if (size > best_size) {
      best = clique;
      best_size = size;
    }
    while (candidates) {
      const int v = std::countr_zero(candidates);
      candidates &= candidates - 1;
      self(self, clique | (std::uint32_t{1} << v), size + 1, candidates & adj[v]);
    }
  };
  const std::uint32_t all =
      n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  extend(extend, 0, 0, all);

  CliqueResult result;
  for (std::size_t v = 0; v < n; ++v) {
    if (best & (std::uint32_t{1} << v)) result.vertices.push_back(v);
  }
  result.stats.nodes = nodes;
  result.stats.elapsed_seconds = seconds_since(start);
  return result;
}

std::size_t greedy_coloring_bound(const SimpleGraph& g,
                                  std::span<const std::size_t> candidates) {
  std::vector<std::size_t> colour(g.size(), 0);  // 0 = uncoloured
  std::size_t used = 0;
  std::vector<bool> taken;
  for (std::size_t v : candidates) {
    taken.assign(used + 2, false);
    for (std::size_t u : candidates) {
      if (colour[u] && g.adjacent(u, v)) taken[colour[u]] = true;
    }
    std::size_t c = 1;
    while (taken[c]) ++c;
    colour[v] = c;
    used = std::max(used, c);
  }
  return used;
}

}  // namespace distlink::clique
