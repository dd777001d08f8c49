#include <doctest.h>

#include <cmath>

#include "orbnet/constellation.hpp"
#include "orbnet/error.hpp"
#include "orbnet/metrics.hpp"

using namespace orbnet;

namespace {

Candidate with_capacity(std::uint32_t sat, double cap) {
  Candidate c;
  c.satellite_id = sat;
  c.capacity_bps = cap;
  return c;
}

}  // namespace

TEST_CASE("aggregate capacity is additive") {
  const std::vector<Candidate> a{with_capacity(1, 1e9), with_capacity(2, 2e9)};
  const std::vector<Candidate> b{with_capacity(3, 5e8)};
  std::vector<Candidate> both = a;
  both.insert(both.end(), b.begin(), b.end());
  CHECK(aggregate_cell_capacity(both) == aggregate_cell_capacity(a) + aggregate_cell_capacity(b));
  CHECK(aggregate_cell_capacity({}) == 0.0);
}

TEST_CASE("per-UE capacity scales as 1/n") {
  CHECK(per_ue_capacity(201.0e9, 10000) == doctest::Approx(20.1e6));
  for (long long n : {1LL, 7LL, 2500LL}) {
    const double c = 1.234e10;
    CHECK(std::abs(per_ue_capacity(c, 4 * n) * 4 / per_ue_capacity(c, n) - 1) < 1e-15);
  }
  try {
    per_ue_capacity(1e9, 0);
    FAIL("expected ZeroUsers");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroUsers);
  }
}

TEST_CASE("handover identity") {
  CHECK(handover_rate(10000, 360) == doctest::Approx(27.78).epsilon(0.005));
  CHECK(handover_rate(30000, 510) == doctest::Approx(58.82).epsilon(0.005));
  CHECK(handover_rate(30000, 21630) == doctest::Approx(1.387).epsilon(0.005));
  CHECK(handover_rate(10000, 1e300) < 1e-290);
  for (double t : {1.0, 360.0, 21630.0}) CHECK(handover_rate(12345, t) * t == doctest::Approx(12345));
  CHECK_THROWS_AS(handover_rate(10, 0), Error);
}

TEST_CASE("mean propagation delay over served UEs") {
  AssociationMap m;
  m.ue_ids = {0, 1, 2};
  Assignment a;
  a.link.slant_range_km = 400;
  m.entries = {a, std::nullopt, a};
  CHECK(mean_propagation_delay(m) == doctest::Approx(1.3342564).epsilon(1e-7));
  m.entries = {std::nullopt, std::nullopt, std::nullopt};
  try {
    mean_propagation_delay(m);
    FAIL("expected NoServedUsers");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoServedUsers);
  }
}

TEST_CASE("single footprint coverage matches the cap formula") {
  SatelliteState s;
  s.position = {0, 0, 600};
  s.ecef = geodetic_to_ecef(s.position);
  const auto fp = visibility_footprints({s}, 0);
  const CoverageEstimate est = coverage_area(fp, 100000, 1);
  // 2 pi R^2 (1 - R / (R + h)) for R = 6371, h = 600.
  CHECK(est.area_km2 == doctest::Approx(2.19508e7).epsilon(0.01));
  CHECK(footprint_area(600, 0) == doctest::Approx(2.19508e7).epsilon(1e-5));
  CHECK(est.standard_error_km2 > 0);
  CHECK(coverage_area({}, 1000, 1).area_km2 == 0.0);
  const CoverageEstimate twice = coverage_area(fp, 200000, 1);
  CHECK(std::abs(twice.area_km2 - est.area_km2) < 3 * est.standard_error_km2);
  CHECK(coverage_area(fp, 5000, 9).area_km2 == coverage_area(fp, 5000, 9).area_km2);
}

TEST_CASE("visibility period is bounded by the zenith pass") {
  const Constellation c = build_constellation(iris2_preset());
  const VisibilityGrid grid;
  for (std::size_t li = 0; li < 3; ++li) {
    const auto& layer = c.layers[li];
    const double analytic_s =
        60 * analytic_max_pass_duration(layer.altitude_km, 20, layer.shells[0].inclination_deg);
    const VisibilityStats v = visibility_period(c, li, 20, grid);
    CHECK(v.passes > 0);
    CHECK(v.mean_period_s >= 0.5 * analytic_s);
    CHECK(v.mean_period_s <= analytic_s);
  }
}

TEST_CASE("a stationary view counts the full horizon") {
  ConstellationLayer geo;
  geo.layer_id = "geo";
  geo.orbit_class = OrbitClass::kMeo;
  geo.altitude_km = 35786;
  geo.cell_radius_km = 2500;
  geo.satellite_count = 1;
  geo.shells = {{1, 1, 0, 0.0}};
  // Earth-synchronous rate keeps the satellite over longitude 0.
  EarthModel earth;
  geo.velocity_override_km_s = earth.rotation_rate_rad_s * (earth.radius_km + geo.altitude_km);
  const Constellation c = build_constellation({geo});
  VisibilityGrid grid;
  grid.latitudes_deg = {0};
  grid.horizon_s = 20000;
  const VisibilityStats v = visibility_period(c, 0, 20, grid);
  CHECK(v.full_horizon_passes == 1);
  CHECK(v.mean_period_s == doctest::Approx(20000));
  CHECK(handover_rate(1000, v.mean_period_s) == doctest::Approx(0.05));
  grid.latitudes_deg = {85};
  CHECK_THROWS_AS(visibility_period(c, 0, 20, grid), Error);
}
