#pragma once

// Spherical-Earth geometry: frame conversions, UE-to-satellite look angles,
// footprint areas and propagation delay. Angles are degrees at the API
// boundary and radians internally. Distances are kilometres.

#include <cmath>
#include <numbers>

namespace orbnet {

inline constexpr double kSpeedOfLightKmPerS = 299792.458;

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct EarthModel {
  double radius_km = 6371.0;
  double rotation_rate_rad_s = 7.2921159e-5;
  double mu_km3_s2 = 398600.4418;

  static constexpr EarthModel standard() { return EarthModel{}; }
};

struct GeodeticPosition {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double altitude_km = 0.0;
};

struct EcefVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double dot(const EcefVector& o) const { return x * o.x + y * o.y + z * o.z; }
  EcefVector operator-(const EcefVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
  EcefVector operator+(const EcefVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
  EcefVector operator*(double s) const { return {x * s, y * s, z * s}; }
  EcefVector unit() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }
};

// Wraps a longitude into [-180, 180).
double normalize_longitude(double lon_deg);

// Throws Error(kInvalidArgument) when latitude, longitude or altitude are
// outside the valid geodetic domain. Longitude is accepted in any range and
// normalised by the conversions, so only non-finite values are rejected.
void validate(const GeodeticPosition& p);

EcefVector geodetic_to_ecef(const GeodeticPosition& p, const EarthModel& earth = {});

// Inverse of geodetic_to_ecef. Points more than 1e-6 km below the surface
// raise SubsurfacePoint; points within that tolerance clamp to altitude 0.
GeodeticPosition ecef_to_geodetic(const EcefVector& v, const EarthModel& earth = {});

// Earth-central angle between two positions, radians.
double central_angle(const GeodeticPosition& a, const GeodeticPosition& b);

// Great-circle distance measured on the surface, km.
double ground_distance(const GeodeticPosition& a, const GeodeticPosition& b,
                       const EarthModel& earth = {});

// Point reached by travelling `distance_km` along the surface from `origin`
// on initial bearing `bearing_deg` (clockwise from north). Altitude 0.
GeodeticPosition destination_point(const GeodeticPosition& origin, double bearing_deg,
                                   double distance_km, const EarthModel& earth = {});

double slant_range(const GeodeticPosition& ue, const GeodeticPosition& sat,
                   const EarthModel& earth = {});

// Elevation of `sat` above the local horizontal plane at `ue`, degrees.
double elevation_angle(const GeodeticPosition& ue, const GeodeticPosition& sat,
                       const EarthModel& earth = {});

// ECEF overloads for hot loops that already hold Cartesian positions.
double elevation_angle(const EcefVector& ue, const EcefVector& sat);

bool is_visible(const GeodeticPosition& ue, const GeodeticPosition& sat,
                double min_elevation_deg, const EarthModel& earth = {});

// Largest Earth-central angle (radians) at which a satellite at `altitude_km`
// still clears `min_elevation_deg`:  arccos(R cos(e) / (R + h)) - e.
double visibility_half_angle(double altitude_km, double min_elevation_deg,
                             const EarthModel& earth = {});

// Area of a spherical cap whose surface radius is `ground_radius_km`.
double spherical_cap_area(double ground_radius_km, const EarthModel& earth = {});

// One-way delay in milliseconds over `distance_km` at the vacuum speed of light.
double propagation_delay_ms(double distance_km);

}  // namespace orbnet
