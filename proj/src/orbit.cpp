#include "orbnet/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orbnet/error.hpp"

namespace orbnet {

void validate(const OrbitalElements& el, const EarthModel& earth) {
  if (!(el.semi_major_axis_km > earth.radius_km))
    throw Error(ErrorCode::kInvalidArgument,
                "semi-major axis must exceed the Earth radius: " +
                    std::to_string(el.semi_major_axis_km));
  if (!(el.eccentricity >= 0.0 && el.eccentricity < kMaxEccentricity))
    throw Error(ErrorCode::kInvalidArgument,
                "eccentricity outside the circular-orbit domain: " +
                    std::to_string(el.eccentricity));
}

std::vector<OrbitalElements> generate_walker(const WalkerSpec& spec, const EarthModel& earth) {
  const int n = spec.total_satellites;
  const int p = spec.planes;
  if (n <= 0 || p <= 0 || n % p != 0)
    throw Error(ErrorCode::kInvalidWalkerSpec,
                "planes must divide the satellite count (" + std::to_string(n) + ":" +
                    std::to_string(p) + ")");
  if (spec.phasing < 0 || spec.phasing >= p)
    throw Error(ErrorCode::kInvalidWalkerSpec,
                "phasing must lie in [0, P): F=" + std::to_string(spec.phasing));
  if (!(spec.altitude_km > 0.0))
    throw Error(ErrorCode::kInvalidWalkerSpec, "altitude must be positive");

  const int per_plane = n / p;
  std::vector<OrbitalElements> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < p; ++k) {
    for (int j = 0; j < per_plane; ++j) {
      OrbitalElements el;
      el.semi_major_axis_km = earth.radius_km + spec.altitude_km;
      el.inclination_deg = spec.inclination_deg;
      el.raan_deg = 360.0 * k / p;
      // j*360*P/N + k*360*F/N == 360 * ((j*P + k*F) mod N) / N, kept in
      // integers so the lattice is exact before the final division.
      const long long numerator =
          (static_cast<long long>(j) * p + static_cast<long long>(k) * spec.phasing) % n;
      el.argument_of_latitude_deg = 360.0 * static_cast<double>(numerator) / n;
      out.push_back(el);
    }
  }
  return out;
}

double mean_motion(double semi_major_axis_km, const EarthModel& earth) {
  const double a = semi_major_axis_km;
  return std::sqrt(earth.mu_km3_s2 / (a * a * a));
}

double orbital_period(double semi_major_axis_km, const EarthModel& earth) {
  if (!(semi_major_axis_km > earth.radius_km))
    throw Error(ErrorCode::kInvalidArgument, "semi-major axis must exceed the Earth radius");
  return 2.0 * std::numbers::pi / mean_motion(semi_major_axis_km, earth);
}

double circular_velocity(double semi_major_axis_km, const EarthModel& earth) {
  return std::sqrt(earth.mu_km3_s2 / semi_major_axis_km);
}

SatelliteState propagate_circular(const OrbitalElements& el, double t_s, const EarthModel& earth,
                                  std::optional<double> velocity_override_km_s) {
  const double a = el.semi_major_axis_km;
  const double rate = velocity_override_km_s ? *velocity_override_km_s / a : mean_motion(a, earth);
  const double u = deg_to_rad(el.argument_of_latitude_deg) + rate * (t_s - el.epoch_s);
  const double raan = deg_to_rad(el.raan_deg);
  const double inc = deg_to_rad(el.inclination_deg);

  const double cu = std::cos(u), su = std::sin(u);
  const double co = std::cos(raan), so = std::sin(raan);
  const double ci = std::cos(inc), si = std::sin(inc);
  const double xi = a * (co * cu - so * su * ci);
  const double yi = a * (so * cu + co * su * ci);
  const double zi = a * (su * si);

  const double theta = earth.rotation_rate_rad_s * t_s;
  const double ct = std::cos(theta), st = std::sin(theta);

  SatelliteState s;
  s.elements = el;
  s.ecef = {ct * xi + st * yi, -st * xi + ct * yi, zi};
  s.position = ecef_to_geodetic(s.ecef, earth);
  s.velocity_km_s = velocity_override_km_s ? *velocity_override_km_s : circular_velocity(a, earth);
  return s;
}

double analytic_max_pass_duration(double altitude_km, double min_elevation_deg,
                                  double inclination_deg, const EarthModel& earth) {
  if (!(altitude_km > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "altitude must be positive");
  if (!(min_elevation_deg >= 0.0 && min_elevation_deg <= 90.0))
    throw Error(ErrorCode::kElevationOutOfRange, "minimum elevation must lie in [0, 90]");
  const double beta = std::max(0.0, visibility_half_angle(altitude_km, min_elevation_deg, earth));
  const double a = earth.radius_km + altitude_km;
  const double relative_rate =
      mean_motion(a, earth) - earth.rotation_rate_rad_s * std::cos(deg_to_rad(inclination_deg));
  return 2.0 * beta / relative_rate / 60.0;
}

}  // namespace orbnet
