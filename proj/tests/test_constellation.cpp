#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "orbnet/constellation.hpp"
#include "orbnet/error.hpp"

using namespace orbnet;

TEST_CASE("presets") {
  const auto starlink = starlink_preset();
  REQUIRE(starlink.size() == 1);
  CHECK(starlink[0].satellite_count == 6937);
  CHECK(starlink[0].altitude_km == 600);
  CHECK(starlink[0].cell_radius_km == 600);
  CHECK(starlink[0].beams_per_satellite == 61);
  int shell_sum = 0;
  for (const auto& s : starlink[0].shells) shell_sum += s.total_satellites;
  CHECK(shell_sum == 6937);

  const auto iris = iris2_preset();
  REQUIRE(iris.size() == 3);
  CHECK(iris[0].orbit_class == OrbitClass::kLeo);
  CHECK(iris[0].satellite_count == 264);
  CHECK(iris[0].altitude_km == 1200);
  CHECK(iris[1].orbit_class == OrbitClass::kLowLeo);
  CHECK(iris[1].satellite_count == 10);
  CHECK(iris[1].altitude_km == 400);
  CHECK(iris[2].orbit_class == OrbitClass::kMeo);
  CHECK(iris[2].satellite_count == 18);
  CHECK(iris[2].altitude_km == 8000);
  CHECK(iris[2].cell_radius_km == 2500);
  CHECK_THROWS_AS(preset_by_name("oneweb"), Error);
}

TEST_CASE("build constellation assigns unique ids per layer") {
  const Constellation c = build_constellation(iris2_preset());
  CHECK(c.satellites.size() == 292);
  CHECK(c.count_in_layer(0) == 264);
  CHECK(c.count_in_layer(1) == 10);
  CHECK(c.count_in_layer(2) == 18);
  std::set<std::uint32_t> ids;
  for (const auto& s : c.satellites) ids.insert(s.satellite_id);
  CHECK(ids.size() == 292);
}

TEST_CASE("layer validation") {
  auto layers = iris2_preset();
  layers[0].satellite_count = 100;
  CHECK_THROWS_AS(build_constellation(layers), Error);
  ConstellationLayer bad = iris2_preset()[0];
  bad.cell_radius_km = -1;
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("max_satellites subsample is seeded") {
  auto layers = starlink_preset();
  layers[0].max_satellites = 500;
  const Constellation a = build_constellation(layers, 5);
  const Constellation b = build_constellation(layers, 5);
  const Constellation c = build_constellation(layers, 6);
  REQUIRE(a.satellites.size() == 500);
  CHECK(a.count_in_layer(0) == 500);
  bool same = true, differs = false;
  for (std::size_t i = 0; i < 500; ++i) {
    const auto& ea = a.satellites[i].elements;
    same = same && ea.raan_deg == b.satellites[i].elements.raan_deg &&
           ea.argument_of_latitude_deg == b.satellites[i].elements.argument_of_latitude_deg;
    differs = differs || ea.raan_deg != c.satellites[i].elements.raan_deg ||
              ea.argument_of_latitude_deg != c.satellites[i].elements.argument_of_latitude_deg;
  }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("degradation keeps nested subsets") {
  const Constellation full = build_constellation(iris2_preset());
  CHECK(degrade_constellation(full, 1.0, 3).satellites.size() == full.satellites.size());
  std::vector<std::set<std::uint32_t>> kept;
  for (double f : {0.75, 0.5, 0.25}) {
    const Constellation d = degrade_constellation(full, f, 3);
    std::size_t expected = 0;
    for (std::size_t li = 0; li < 3; ++li)
      expected += static_cast<std::size_t>(std::floor(f * full.count_in_layer(li)));
    CHECK(d.satellites.size() == expected);
    std::set<std::uint32_t> ids;
    for (const auto& s : d.satellites) ids.insert(s.satellite_id);
    kept.push_back(ids);
  }
  CHECK(std::includes(kept[0].begin(), kept[0].end(), kept[1].begin(), kept[1].end()));
  CHECK(std::includes(kept[1].begin(), kept[1].end(), kept[2].begin(), kept[2].end()));
  for (double f : {0.0, -0.1, 1.5}) {
    try {
      degrade_constellation(full, f, 3);
      FAIL("expected InvalidFraction");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidFraction);
    }
  }
}

TEST_CASE("beam layout fills hexagonal rings inside the cell") {
  const auto layout = beam_layout(61, 600);
  REQUIRE(layout.size() == 61);
  CHECK(layout[0].ring == 0);
  CHECK(layout[0].east_km == 0);
  int ring_counts[5] = {0, 0, 0, 0, 0};
  for (const auto& b : layout) {
    REQUIRE(b.ring <= 4);
    ++ring_counts[b.ring];
    CHECK(std::hypot(b.east_km, b.north_km) <= 600 - 60 + 1e-9);
  }
  CHECK(ring_counts[0] == 1);
  CHECK(ring_counts[1] == 6);
  CHECK(ring_counts[2] == 12);
  CHECK(ring_counts[3] == 18);
  CHECK(ring_counts[4] == 24);
}

TEST_CASE("beams travel with their satellite") {
  const Constellation c = build_constellation(iris2_preset());
  const SatelliteState s = propagate(c.satellites[0], c, 0);
  const auto beams = beams_for_satellite(s, c.layers[0]);
  REQUIRE(beams.size() == 61);
  CHECK(beams[0].boresight.latitude_deg == doctest::Approx(s.position.latitude_deg));
  CHECK(beams[0].boresight.longitude_deg == doctest::Approx(s.position.longitude_deg));
  for (const auto& b : beams) {
    CHECK(b.parent_satellite_id == s.satellite_id);
    CHECK(b.ground_radius_km == 120);
  }
}

TEST_CASE("TLE layers take their count from the file") {
  ConstellationLayer layer;
  layer.layer_id = "tle";
  layer.orbit_class = OrbitClass::kLeo;
  layer.altitude_km = 550;
  layer.cell_radius_km = 600;
  layer.tle_path = ORBNET_TEST_FIXTURES "/sample.tle";
  const Constellation c = build_constellation({layer});
  CHECK(c.satellites.size() == 4);
  CHECK(c.layers[0].satellite_count == 4);
  CHECK(c.satellites[0].elements.inclination_deg == doctest::Approx(51.6416));
  layer.tle_path = ORBNET_TEST_FIXTURES "/missing.tle";
  CHECK_THROWS_AS(build_constellation({layer}), Error);
}
