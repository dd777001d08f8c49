#include "orbnet/geometry.hpp"

#include <algorithm>
#include <string>

#include "orbnet/error.hpp"

namespace orbnet {

namespace {

constexpr double kSurfaceTolerance = 1e-6;

}  // namespace

double normalize_longitude(double lon_deg) {
  double lon = std::fmod(lon_deg + 180.0, 360.0);
  if (lon < 0.0) lon += 360.0;
  lon -= 180.0;
  // fmod can round 179.999999... up to exactly 180.
  if (lon >= 180.0) lon -= 360.0;
  return lon;
}

void validate(const GeodeticPosition& p) {
  if (!std::isfinite(p.latitude_deg) || p.latitude_deg < -90.0 || p.latitude_deg > 90.0)
    throw Error(ErrorCode::kInvalidArgument,
                "latitude out of [-90, 90]: " + std::to_string(p.latitude_deg));
  if (!std::isfinite(p.longitude_deg))
    throw Error(ErrorCode::kInvalidArgument, "longitude is not finite");
  if (!std::isfinite(p.altitude_km) || p.altitude_km < 0.0)
    throw Error(ErrorCode::kInvalidArgument,
                "altitude must be >= 0: " + std::to_string(p.altitude_km));
}

EcefVector geodetic_to_ecef(const GeodeticPosition& p, const EarthModel& earth) {
  const double r = earth.radius_km + p.altitude_km;
  const double lat = deg_to_rad(p.latitude_deg);
  const double lon = deg_to_rad(p.longitude_deg);
  const double cos_lat = std::cos(lat);
  return {r * cos_lat * std::cos(lon), r * cos_lat * std::sin(lon), r * std::sin(lat)};
}

GeodeticPosition ecef_to_geodetic(const EcefVector& v, const EarthModel& earth) {
  const double r = v.norm();
  if (r < earth.radius_km - kSurfaceTolerance)
    throw Error(ErrorCode::kSubsurfacePoint,
                "point lies " + std::to_string(earth.radius_km - r) + " km below the surface");
  GeodeticPosition p;
  p.latitude_deg = rad_to_deg(std::asin(std::clamp(v.z / r, -1.0, 1.0)));
  p.longitude_deg = normalize_longitude(rad_to_deg(std::atan2(v.y, v.x)));
  p.altitude_km = std::max(0.0, r - earth.radius_km);
  return p;
}

double central_angle(const GeodeticPosition& a, const GeodeticPosition& b) {
  // Haversine form stays accurate for small separations.
  const double lat1 = deg_to_rad(a.latitude_deg);
  const double lat2 = deg_to_rad(b.latitude_deg);
  const double dlat = lat2 - lat1;
  const double dlon = deg_to_rad(b.longitude_deg - a.longitude_deg);
  const double s = std::sin(dlat / 2.0);
  const double t = std::sin(dlon / 2.0);
  const double h = s * s + std::cos(lat1) * std::cos(lat2) * t * t;
  return 2.0 * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

double ground_distance(const GeodeticPosition& a, const GeodeticPosition& b,
                       const EarthModel& earth) {
  return earth.radius_km * central_angle(a, b);
}

GeodeticPosition destination_point(const GeodeticPosition& origin, double bearing_deg,
                                   double distance_km, const EarthModel& earth) {
  const double delta = distance_km / earth.radius_km;
  const double theta = deg_to_rad(bearing_deg);
  const double lat1 = deg_to_rad(origin.latitude_deg);
  const double lon1 = deg_to_rad(origin.longitude_deg);
  const double sin_lat2 =
      std::sin(lat1) * std::cos(delta) + std::cos(lat1) * std::sin(delta) * std::cos(theta);
  const double lat2 = std::asin(std::clamp(sin_lat2, -1.0, 1.0));
  const double lon2 = lon1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(lat1),
                                        std::cos(delta) - std::sin(lat1) * sin_lat2);
  return {rad_to_deg(lat2), normalize_longitude(rad_to_deg(lon2)), 0.0};
}

double slant_range(const GeodeticPosition& ue, const GeodeticPosition& sat,
                   const EarthModel& earth) {
  return (geodetic_to_ecef(sat, earth) - geodetic_to_ecef(ue, earth)).norm();
}

double elevation_angle(const EcefVector& ue, const EcefVector& sat) {
  const EcefVector los = sat - ue;
  const double range = los.norm();
  if (range == 0.0) return 90.0;
  const double sin_el = los.dot(ue) / (range * ue.norm());
  return rad_to_deg(std::asin(std::clamp(sin_el, -1.0, 1.0)));
}

double elevation_angle(const GeodeticPosition& ue, const GeodeticPosition& sat,
                       const EarthModel& earth) {
  return elevation_angle(geodetic_to_ecef(ue, earth), geodetic_to_ecef(sat, earth));
}

bool is_visible(const GeodeticPosition& ue, const GeodeticPosition& sat,
                double min_elevation_deg, const EarthModel& earth) {
  return elevation_angle(ue, sat, earth) >= min_elevation_deg;
}

double visibility_half_angle(double altitude_km, double min_elevation_deg,
                             const EarthModel& earth) {
  const double eps = deg_to_rad(min_elevation_deg);
  const double ratio = earth.radius_km * std::cos(eps) / (earth.radius_km + altitude_km);
  return std::acos(std::clamp(ratio, -1.0, 1.0)) - eps;
}

double spherical_cap_area(double ground_radius_km, const EarthModel& earth) {
  if (!(ground_radius_km >= 0.0) || ground_radius_km > std::numbers::pi * earth.radius_km)
    throw Error(ErrorCode::kRadiusOutOfRange,
                "ground radius must lie in [0, pi*R]: " + std::to_string(ground_radius_km));
  const double r2 = earth.radius_km * earth.radius_km;
  // 1 - cos(x) = 2 sin^2(x/2) avoids cancellation for small caps.
  const double s = std::sin(ground_radius_km / earth.radius_km / 2.0);
  return 4.0 * std::numbers::pi * r2 * s * s;
}

double propagation_delay_ms(double distance_km) {
  if (!(distance_km >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "distance must be >= 0");
  return distance_km / kSpeedOfLightKmPerS * 1000.0;
}

}  // namespace orbnet
