#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace eegdem {

// Counter-based randomness: every draw is a pure function of (seed, stream
// key, counter), so parallel generation is reproducible and order-free.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable 64-bit key from a seed and a short label (FNV-1a over the label).
inline std::uint64_t derive_key(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ splitmix64(seed);
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h);
}

inline std::uint64_t derive_key(std::uint64_t seed, std::string_view label,
                                std::uint64_t a, std::uint64_t b = 0,
                                std::uint64_t c = 0) {
  std::uint64_t h = derive_key(seed, label);
  h = splitmix64(h ^ (a * 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ (b * 0xc2b2ae3d27d4eb4fULL));
  h = splitmix64(h ^ (c * 0x165667b19e3779f9ULL));
  return h;
}

/// Stateless uniform in [0,1) for a given stream key and counter.
inline double uniform01(std::uint64_t key, std::uint64_t counter) {
  const std::uint64_t bits = splitmix64(key ^ splitmix64(counter + 1));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on two counter draws.
inline double normal01(std::uint64_t key, std::uint64_t counter) {
  const double u1 = uniform01(key, 2 * counter);
  const double u2 = uniform01(key, 2 * counter + 1);
  const double r = std::sqrt(-2.0 * std::log(u1 + 1e-300));
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(std::uint64_t key, std::uint64_t counter,
                                   std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform01(key, counter) * static_cast<double>(n)) % n;
}

/// Deterministic Fisher-Yates shuffle driven by the stream key.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::uint64_t key) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_index(key, i, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace eegdem
