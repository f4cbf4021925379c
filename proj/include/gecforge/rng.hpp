#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gecforge {

// Deterministic splitmix64 generator. std::mt19937 + std::uniform_int_distribution
// and std::shuffle are implementation-defined, so every draw here is hand-rolled
// to keep generated corpora byte-identical across platforms.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound). bound must be > 0.
  uint64_t below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  bool chance(double p) { return next_double() < p; }

  // Categorical draw over non-negative weights summing to ~1.
  size_t categorical(std::span<const double> probs) {
    double u = next_double();
    double cum = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
      cum += probs[i];
      if (u < cum) return i;
    }
    return probs.empty() ? 0 : probs.size() - 1;
  }

  // Fisher-Yates with explicit draws.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (size_t i = v.size() - 1; i > 0; --i) {
      const size_t j = static_cast<size_t>(below(i + 1));
      using std::swap;
      swap(v[i], v[j]);
    }
  }

private:
  uint64_t state_;
};

inline uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

// Child seed for stream `id` under a global seed; keeps per-sentence
// corruption independent of processing order.
inline uint64_t derive_seed(uint64_t seed, uint64_t id) {
  return mix64(seed ^ mix64(id + 0x9e3779b97f4a7c15ULL));
}

}  // namespace gecforge
