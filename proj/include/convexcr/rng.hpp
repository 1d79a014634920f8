#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "convexcr/vec.hpp"

namespace convexcr {

// Deterministic RNG facade. mt19937_64 has a standard-pinned output sequence,
// and the double conversions below are explicit formulas rather than
// std::*_distribution (whose streams are implementation-defined), so results
// are reproducible across compilers for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is fine at our scales (n << 2^64).
    return gen_() % n;
  }

  // Standard normal via Box-Muller (explicit formula, no cached spare).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Vec normal_vec(int dim) {
    Vec v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  Vec unit_direction(int dim) {
    for (;;) {
      Vec v = normal_vec(dim);
      double n = norm(v);
      if (n > 1e-12) return v * (1.0 / n);
    }
  }

  // Uniform in the unit ball: random direction scaled by U^(1/dim).
  Vec in_unit_ball(int dim) {
    Vec u = unit_direction(dim);
    double radius = std::pow(uniform01(), 1.0 / static_cast<double>(dim));
    return u * radius;
  }

 private:
  std::mt19937_64 gen_;
};

// splitmix64; used to derive independent sub-seeds from (seed, tag) pairs.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace convexcr
