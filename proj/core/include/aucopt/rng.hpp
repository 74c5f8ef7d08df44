#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace aucopt {

// Every seeded operation in this library draws from this generator so that
// results are reproducible across platforms and releases. The algorithms are
// pinned here rather than delegated to <random> distributions (which the
// standard leaves implementation-defined):
//
//   stream     std::mt19937_64 (bit-exact per the C++ standard)
//   below(n)   rejection sampling on the high bits, unbiased
//   double     53-bit mantissa: (next() >> 11) * 2^-53, uniform on [0, 1)
//   gaussian   Box-Muller on two uniform doubles
//   shuffle    Fisher-Yates, descending index
//   seeds      derive_seed mixes a master seed and a stream index via the
//              splitmix64 finalizer
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// Uniform double in [0, 1).
  double unit_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate.
  double gaussian();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  /// Point drawn uniformly from the unit sphere in R^d.
  std::vector<double> unit_vector(std::size_t d);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministic per-stream seed from a master seed and a stream index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace aucopt
