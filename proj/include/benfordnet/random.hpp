#pragma once

// Pinned pseudo-random source shared by sampling and the synthetic
// generators. Every draw is defined here in terms of std::mt19937_64, whose
// output sequence is fixed by the C++ standard; the distribution helpers are
// our own so results do not depend on the standard library vendor.
//
//   below(n)    rejection sampling: reject r < (2^64 - n) mod n, return r mod n
//   unit()      (r >> 11) * 2^-53, uniform on [0, 1)
//   derive_seed splitmix64 finalizer of (seed + (index + 1) * 0x9E3779B97F4A7C15)

#include <benfordnet/errors.hpp>

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace benfordnet {

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the `index`-th independent stream under a master seed.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master,
                                                  std::uint64_t index) noexcept {
  return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw usage_error("Rng::below needs a positive bound");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// `n` distinct indices from [0, total) in draw order (partial Fisher-Yates).
/// n == total yields a permutation.
[[nodiscard]] inline std::vector<std::size_t> sample_indices(std::size_t total, std::size_t n,
                                                             Rng& rng) {
  if (n > total) throw usage_error("cannot sample more indices than exist");
  std::vector<std::size_t> index(total);
  std::iota(index.begin(), index.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(index[i], index[j]);
  }
  index.resize(n);
  return index;
}

}  // namespace benfordnet
