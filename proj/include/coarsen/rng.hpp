#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace coarsen {

/// Deterministic, platform-independent random source (splitmix64 core).
///
/// Every randomized routine takes one of these (or a seed) explicitly; a
/// single root seed is split into independent child streams so that adding
/// or reordering consumers does not perturb unrelated draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in the inclusive range [lo, hi].
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  /// Standard normal via Box-Muller (no cached spare; two draws per call).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Independent child stream; derivation depends only on the constructor
  /// seed and the stream id, never on how many draws were consumed.
  Rng child(std::uint64_t stream) const {
    Rng mixer(seed_ ^ (0xA0761D6478BD642Full * (stream + 1)));
    mixer.next_u64();
    return Rng(mixer.next_u64());
  }

  /// First k entries of a random permutation of {0, .., n-1} (partial
  /// Fisher-Yates); equivalently a uniform sample of k ids w/o replacement.
  std::vector<int> sample_without_replacement(int n, int k) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int i = 0; i < k; ++i) {
      const int j = uniform_int(i, n - 1);
      std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    return ids;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace coarsen
