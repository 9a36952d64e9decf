#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tnc {

/// splitmix64 step; used both as a generator seeder and to derive independent
/// per-path seeds from a master seed.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic child seed for unit `index` (sample path, probe rate, ...).
/// Paths seeded this way are independent streams regardless of execution
/// order, which keeps parallel runs bit-reproducible.
inline uint64_t split_seed(uint64_t master, uint64_t index) {
  uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return splitmix64(s);
}

/// Seeded wrapper around mt19937_64 with the few primitives the models need.
/// Sampling uses explicit inverse transforms so results depend only on the
/// generator, not on library-specific distribution algorithms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return u01() < p; }

  /// Geometric on {1, 2, ...} with success probability beta: P[Y=k] = beta (1-beta)^(k-1).
  int geometric_from_one(double beta) {
    if (beta >= 1.0) return 1;
    double u = u01();
    return 1 + static_cast<int>(std::log1p(-u) / std::log1p(-beta));
  }

  /// Geometric on {0, 1, ...} with P[T=v] = p (1-p)^v.
  int geometric_from_zero(double p) { return geometric_from_one(p) - 1; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tnc
