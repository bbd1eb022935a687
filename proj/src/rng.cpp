#include "maxpm/rng.hpp"

#include <cmath>

namespace maxpm {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t Rng::mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b) {
  std::uint64_t h = mix(seed + kGolden);
  h = mix(h ^ (a + 0xBF58476D1CE4E5B9ull));
  h = mix(h ^ (b + 0x94D049BB133111EBull));
  return h;
}

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_unit_open() {
  // (x + 0.5) / 2^53 lies strictly inside (0, 1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t Rng::next_below(std::size_t n) {
  // Rejection sampling over the top of the range keeps the result unbiased.
  const std::uint64_t m = static_cast<std::uint64_t>(n);
  const std::uint64_t threshold = (0 - m) % m;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return static_cast<std::size_t>(r % m);
  }
}

double Rng::next_gumbel() {
  return -std::log(-std::log(next_unit_open()));
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix(state_ ^ mix(stream + kGolden)));
}

}  // namespace maxpm
