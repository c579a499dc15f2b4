#pragma once

// Portable random streams. Only the 64-bit engine output is used; the
// real-valued and integer draws below are defined here so that a seed gives
// the same numbers on every standard library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Core>

namespace fixopt {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for sub-stream (a, b, c) of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ a);
  s = splitmix64(s ^ (b + 0x632BE59BD9B4E019ULL));
  s = splitmix64(s ^ (c + 0x8CB92BA72F3D8DD7ULL));
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on {0, ..., n - 1} by rejection.
  std::uint64_t index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  /// Standard normal by Box-Muller (no cached second value).
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Eigen::VectorXd unit_vector(int dim) {
    Eigen::VectorXd v(dim);
    double n2 = 0.0;
    do {
      for (int k = 0; k < dim; ++k) v[k] = normal();
      n2 = v.squaredNorm();
    } while (n2 == 0.0);
    return v / std::sqrt(n2);
  }

  /// Uniform in the Euclidean ball of the given radius.
  Eigen::VectorXd in_ball(int dim, double radius) {
    const Eigen::VectorXd dir = unit_vector(dim);
    return (radius * std::pow(uniform(), 1.0 / dim)) * dir;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fixopt
