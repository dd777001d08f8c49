#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orbnet/random.hpp"

using namespace orbnet;

TEST_CASE("derived seeds are deterministic and distinct") {
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
  CHECK(derive_seed(1, 2, 3) == derive_seed(derive_seed(1, 2), 3));
  CHECK(stream_seed(7, SeedStream::kShadowing) != stream_seed(7, SeedStream::kCoverage));
}

TEST_CASE("unit interval bounds") {
  CHECK(to_unit_interval(0) == 0.0);
  CHECK(to_unit_interval(~0ull) < 1.0);
}

TEST_CASE("uniform and normal moments") {
  Rng rng(42);
  const int n = 200000;
  double s = 0, s2 = 0, ns = 0, ns2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    s += u;
    s2 += u * u;
    const double z = rng.normal();
    ns += z;
    ns2 += z * z;
  }
  CHECK(s / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(s2 / n - (s / n) * (s / n) == doctest::Approx(1.0 / 12).epsilon(0.02));
  CHECK(std::abs(ns / n) < 5.0 / std::sqrt(n));
  CHECK(ns2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("bounded integers stay in range") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) CHECK(rng.below(7) < 7);
}

TEST_CASE("seeded permutation") {
  auto p = seeded_permutation(1000, 9);
  CHECK(p == seeded_permutation(1000, 9));
  CHECK(p != seeded_permutation(1000, 10));
  std::sort(p.begin(), p.end());
  std::vector<std::uint32_t> iota(1000);
  std::iota(iota.begin(), iota.end(), 0u);
  CHECK(p == iota);
}

TEST_CASE("keyed normal depends only on the key") {
  CHECK(keyed_normal(123) == keyed_normal(123));
  CHECK(keyed_normal(123) != keyed_normal(124));
}
