#pragma once

#include <cstdint>

namespace covsolve {

// SplitMix64 stream. Every random decision in the library flows through an
// explicitly passed Rng; nothing reads ambient entropy, so a run is fully
// determined by its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n) for n >= 1, unbiased (Lemire multiply-reject).
  std::uint64_t next_below(std::uint64_t n) {
    using u128 = unsigned __int128;
    std::uint64_t x = next_u64();
    u128 m = static_cast<u128>(x) * static_cast<u128>(n);
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      std::uint64_t threshold = -n % n;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<u128>(x) * static_cast<u128>(n);
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Finalizer used to hash (seed, stream) pairs into independent streams.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Independent stream for (seed, stream); used to run rounding trials
  // deterministically regardless of evaluation order.
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(seed + 0x9e3779b97f4a7c15ull * (stream + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace covsolve
