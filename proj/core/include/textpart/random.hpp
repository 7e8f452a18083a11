#pragma once

#include <cstdint>
#include <random>

// Seeded randomness helpers. std::mt19937_64 output is fixed by the
// standard; the mappings below avoid the implementation-defined
// std::uniform_*_distribution algorithms so that seeded runs are
// bit-identical across compilers and platforms.

namespace textpart {

/// splitmix64 finalizer; full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent per-item seed from a master seed and an item index.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index + 1));
}

/// Uniform double in [0, 1), using the top 53 bits of one draw.
inline double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, n); n must be nonzero.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = gen();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = gen();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace textpart
