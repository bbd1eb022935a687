#pragma once

#include <cstddef>
#include <cstdint>

namespace maxpm {

// Seedable counter-style 64-bit generator (splitmix64 under the hood).
// All randomized code in this project draws from Rng rather than <random>
// distributions, so identical seeds reproduce identical runs on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // splitmix64 finalizer; also used as the stable hash for seed derivation.
  static std::uint64_t mix(std::uint64_t x);

  // Stable child seed for (seed, a, b) triples, e.g. (master, swept value,
  // repetition index). The exact formula is documented in the README so
  // other tooling can regenerate the streams.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b);

  std::uint64_t next_u64();
  double next_double();      // uniform in [0, 1)
  double next_unit_open();   // uniform in (0, 1); safe to pass to log()
  std::size_t next_below(std::size_t n);  // uniform in [0, n), unbiased
  double next_gumbel();      // standard Gumbel(0, 1)

  // Independent child stream; does not advance this generator.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t state_;
};

}  // namespace maxpm
