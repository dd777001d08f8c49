#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orbnet/error.hpp"
#include "orbnet/geometry.hpp"

using namespace orbnet;

namespace {
constexpr double kR = 6371.0;
}

TEST_CASE("geodetic to ECEF on the axes") {
  const EcefVector a = geodetic_to_ecef({0, 0, 0});
  CHECK(a.x == doctest::Approx(kR));
  CHECK(std::abs(a.y) < 1e-9);
  CHECK(std::abs(a.z) < 1e-9);
  const EcefVector np = geodetic_to_ecef({90, 0, 0});
  CHECK(np.z == doctest::Approx(kR));
  const EcefVector e = geodetic_to_ecef({0, 90, 600});
  CHECK(e.y == doctest::Approx(kR + 600));
}

TEST_CASE("ECEF round trip") {
  for (double lat : {-89.0, -45.5, 0.0, 12.25, 71.0}) {
    for (double lon : {-179.0, -30.0, 0.0, 100.0}) {
      for (double h : {0.0, 400.0, 8000.0}) {
        const GeodeticPosition p{lat, lon, h};
        const GeodeticPosition q = ecef_to_geodetic(geodetic_to_ecef(p));
        CHECK(q.latitude_deg == doctest::Approx(lat).epsilon(1e-12));
        CHECK(q.longitude_deg == doctest::Approx(lon).epsilon(1e-12));
        CHECK(q.altitude_km == doctest::Approx(h).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("subsurface points are rejected") {
  try {
    ecef_to_geodetic({100, 0, 0});
    FAIL("expected SubsurfacePoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSubsurfacePoint);
  }
  CHECK(ecef_to_geodetic({kR - 1e-8, 0, 0}).altitude_km == 0.0);
}

TEST_CASE("invalid geodetic input") {
  CHECK_THROWS_AS(validate(GeodeticPosition{91, 0, 0}), Error);
  CHECK_THROWS_AS(validate(GeodeticPosition{0, 0, -1}), Error);
  CHECK_THROWS_AS(validate(GeodeticPosition{std::nan(""), 0, 0}), Error);
  CHECK(normalize_longitude(190) == doctest::Approx(-170));
  CHECK(normalize_longitude(-180) == doctest::Approx(-180));
}

TEST_CASE("slant range and elevation at nadir and at 20 degrees") {
  const GeodeticPosition ue{0, 0, 0};
  CHECK(slant_range(ue, {0, 0, 600}) == doctest::Approx(600));
  CHECK(elevation_angle(ue, {0, 0, 600}) == doctest::Approx(90));
  // d = R(sqrt(((R+h)/R)^2 - cos^2 e) - sin e) evaluated offline for 600 km, 20 deg.
  const double beta = visibility_half_angle(600, 20);
  CHECK(rad_to_deg(beta) == doctest::Approx(10.81649323).epsilon(1e-8));
  const GeodeticPosition sat{0, rad_to_deg(beta), 600};
  CHECK(slant_range(ue, sat) == doctest::Approx(1392.163988).epsilon(1e-8));
  CHECK(elevation_angle(ue, sat) == doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("elevation falls monotonically with central angle") {
  const GeodeticPosition ue{10, 20, 0};
  double previous = 91;
  for (int i = 0; i < 1000; ++i) {
    const double lon = 20 + 60.0 * i / 1000.0;
    const double el = elevation_angle(ue, {10, lon, 1200});
    CHECK(el < previous);
    previous = el;
  }
}

TEST_CASE("visibility is inclusive at the mask") {
  const double beta = rad_to_deg(visibility_half_angle(600, 20));
  CHECK(is_visible({0, 0, 0}, {0, 0, 600}, 20));
  CHECK_FALSE(is_visible({0, 0, 0}, {0, 180, 600}, 0));
  CHECK(is_visible({0, 0, 0}, {0, beta * (1 - 1e-12), 600}, 20));
  CHECK_FALSE(is_visible({0, 0, 0}, {0, beta + 0.01, 600}, 20));
}

TEST_CASE("central angle, ground distance and destination point agree") {
  const GeodeticPosition a{48, 10, 0};
  const GeodeticPosition b = destination_point(a, 37, 1234);
  CHECK(ground_distance(a, b) == doctest::Approx(1234).epsilon(1e-9));
  CHECK(central_angle({0, 0, 0}, {0, 90, 0}) == doctest::Approx(std::numbers::pi / 2));
  const GeodeticPosition n = destination_point({0, 0, 0}, 0, kR * std::numbers::pi / 4);
  CHECK(n.latitude_deg == doctest::Approx(45));
  CHECK(n.longitude_deg == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("spherical cap areas") {
  CHECK(spherical_cap_area(0) == 0.0);
  CHECK(spherical_cap_area(std::numbers::pi * kR) == doctest::Approx(4 * std::numbers::pi * kR * kR));
  CHECK(spherical_cap_area(2500) == doctest::Approx(1.9384294e7).epsilon(1e-6));
  CHECK(spherical_cap_area(1) == doctest::Approx(std::numbers::pi).epsilon(1e-6));
  CHECK_THROWS_AS(spherical_cap_area(-1), Error);
  CHECK_THROWS_AS(spherical_cap_area(4 * kR), Error);
}

TEST_CASE("propagation delay") {
  CHECK(propagation_delay_ms(0) == 0.0);
  CHECK(propagation_delay_ms(400) == doctest::Approx(1.3342564).epsilon(1e-7));
  CHECK(propagation_delay_ms(1400) == doctest::Approx(4.6698973).epsilon(1e-7));
}
