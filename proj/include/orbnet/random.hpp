#pragma once

// Seeding and sampling helpers. Draws are built from raw engine output rather
// than std:: distributions, whose algorithms differ between standard
// libraries; results are therefore identical on every platform.

#include <cstdint>
#include <random>
#include <vector>

namespace orbnet {

// SplitMix64 finaliser; used to derive independent sub-seeds from a
// (seed, stream, index...) tuple so no stream depends on evaluation order.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
  return mix64(seed ^ mix64(a));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c) {
  return derive_seed(derive_seed(seed, a, b), c);
}

// Uniform double in [0, 1) from the top 53 bits of a 64-bit word.
constexpr double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stream tags so different consumers of one scenario seed never collide.
enum class SeedStream : std::uint64_t {
  kUeDeployment = 0x55454445,
  kShadowing = 0x53484144,
  kDegradation = 0x44454752,
  kSubsample = 0x53554253,
  kAssociationOrder = 0x4153534f,
  kCoverage = 0x434f5645,
};

constexpr std::uint64_t stream_seed(std::uint64_t seed, SeedStream stream) {
  return derive_seed(seed, static_cast<std::uint64_t>(stream));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return to_unit_interval(engine_()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

  // Standard normal via Box-Muller (one value per call, second discarded).
  double normal();

 private:
  std::mt19937_64 engine_;
};

// Standard normal variate that depends only on `key`.
double keyed_normal(std::uint64_t key);

// Fisher-Yates permutation of [0, n).
std::vector<std::uint32_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace orbnet
