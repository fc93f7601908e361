#ifndef DISTLINK_MASKING_RNG_H_
#define DISTLINK_MASKING_RNG_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>

namespace distlink::masking {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
// pure function of (key, counter), identical on every platform.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block counter, Key key);
};

// 64-bit finaliser from SplitMix64.
std::uint64_t mix64(std::uint64_t x);

// Key for the stream at `path` under `seed`. Distinct paths give independent
// streams; e.g. the simulation uses (tag, sigma index, alpha index,
// repetition) so that results do not depend on scheduling.
std::uint64_t derive_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> path);

// Sequential view over one Philox stream.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key);
  RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
      : RandomStream(derive_key(seed, path)) {}

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1); 53 random bits.
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Standard normal by the Box-Muller transform.
  double normal();
  // Uniform integer in [0, n); n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);

 private:
  Philox4x32::Key key_{};
  std::uint64_t counter_ = 0;
  Philox4x32::Block buffer_{};
  std::size_t used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace distlink::masking

#endif  // DISTLINK_MASKING_RNG_H_
