#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hexb {

// Seeded random stream. Every simulation run draws from its own stream,
// derived from (root seed, path of indices), so parallel execution is
// reproducible and independent of scheduling order.
//
// The engine is std::mt19937_64 (fully specified by the standard); all
// variate transformations are implemented here rather than with
// std::*_distribution, whose sequences vary across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Derive the stream identified by (root, path).
  static Rng stream(std::uint64_t root, std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64();

  // Uniform on [0, 1).
  double uniform01();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer on {lo, ..., hi}, both endpoints included.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p);
  // Standard normal (Marsaglia polar).
  double normal();
  // Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang).
  double gamma(double shape);
  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// splitmix64 finalizer; used for stream derivation and content digests.
std::uint64_t mix64(std::uint64_t z);

}  // namespace hexb
