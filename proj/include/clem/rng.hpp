#pragma once

// Counter-based randomness. Every random quantity is a pure function of
// (seed, stream, counter), so results do not depend on evaluation order or
// on how work is split across threads.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace clem {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t hash_key(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t counter) {
  return mix64(mix64(mix64(seed) ^ stream) + counter);
}

/// FNV-1a; used to turn subcommand / experiment tags into stream ids.
inline constexpr std::uint64_t tag_hash(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Sub-seed derivation: derive_seed(master, tag, i) is the seed of the i-th
/// task tagged `tag` under master seed `master`.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                           std::uint64_t index) {
  return hash_key(master, tag_hash(tag), index);
}

inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return static_cast<double>(hash_key(seed, stream, counter) >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on two independent counters.
inline double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  double u1 = uniform01(seed, stream, 2 * counter);
  double u2 = uniform01(seed, stream, 2 * counter + 1);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Small sequential generator on top of the keyed hash, for code that wants
/// a stream of draws (fixture generators, bootstrap).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return hash_key(seed_, stream_, counter_++); }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }
  double normal() { return standard_normal(seed_, stream_ ^ 0x5bd1e995ULL, counter_++); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace clem
