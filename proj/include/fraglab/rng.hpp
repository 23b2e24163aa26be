#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace fraglab {

// Deterministic, seed-reproducible random engine (xoshiro256** seeded via
// splitmix64). Standard-library distributions are implementation-defined and
// therefore unusable for byte-identical outputs; everything downstream draws
// through this engine only.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0,1), 53-bit resolution.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on [0, bound) without modulo bias (Lemire rejection).
  std::uint64_t below(std::uint64_t bound) {
    for (;;) {
      const std::uint64_t x = next_u64();
      const __uint128_t m = static_cast<__uint128_t>(x) * bound;
      const auto lo = static_cast<std::uint64_t>(m);
      if (lo >= bound || lo >= (-bound) % bound) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  double exponential(double rate) { return -std::log(uniform01()) / rate; }

  /// Standard normal via Box-Muller; the pair's second value is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double theta = 2.0 * 3.14159265358979323846 * uniform01();
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t state_[4]{};
  double cached_ = 0.0;
  bool have_cached_ = false;
};

/// FNV-1a of a module tag, used in seed derivation.
constexpr std::uint64_t tag_hash(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Documented replicate-seed schedule: three rounds of the splitmix64
// finalizer over master ^ hash(tag) ^ index. Replicates are independent
// streams regardless of thread assignment.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  std::uint64_t x = master ^ tag_hash(tag);
  Rng::splitmix64(x);
  x ^= index * 0x9e3779b97f4a7c15ULL;
  Rng::splitmix64(x);
  return Rng::splitmix64(x);
}

inline Rng derived_rng(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  return Rng(derive_seed(master, tag, index));
}

}  // namespace fraglab
