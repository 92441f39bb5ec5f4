#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace covns {

/// Seeded random source shared by every stochastic component.
///
/// Draws are mapped from a std::mt19937_64 stream with portable integer and
/// floating-point conversions, so a given seed yields the same sequence on
/// every standard library. The two draw primitives are virtual so tests can
/// script the exact choices a component makes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  virtual ~Rng() = default;

  Rng(const Rng&) = default;
  Rng& operator=(const Rng&) = default;

  /// Independent stream derived from (seed, stream_id).
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  /// Uniform integer in [0, n). n must be positive.
  virtual std::size_t index(std::size_t n);

  /// Uniform double in [0, 1).
  virtual double unit();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  bool bernoulli(double p) { return unit() < p; }

 protected:
  Rng() = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace covns
