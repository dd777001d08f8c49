#include "orbnet/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace orbnet {

namespace {

double box_muller(double u1, double u2) {
  // u1 in (0, 1] so the logarithm is finite.
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return box_muller(u1, u2);
}

double keyed_normal(std::uint64_t key) {
  const double u1 = 1.0 - to_unit_interval(mix64(key));
  const double u2 = to_unit_interval(mix64(key ^ 0xA5A5A5A5A5A5A5A5ull));
  return box_muller(u1, u2);
}

std::vector<std::uint32_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace orbnet
