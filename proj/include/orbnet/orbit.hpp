#pragma once

// Circular two-body orbits: Walker-delta generation, propagation into the
// Earth-fixed frame, and closed-form period / pass-length helpers.
//
// Propagation deliberately ignores perturbations. TLE mean elements feed the
// same circular propagator, which is adequate for pass statistics but not for
// ephemeris-grade positions.

#include <cstdint>
#include <optional>
#include <vector>

#include "orbnet/geometry.hpp"

namespace orbnet {

// Eccentricities at or above this bound are outside the circular-orbit model.
inline constexpr double kMaxEccentricity = 0.02;

struct OrbitalElements {
  double semi_major_axis_km = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;                       // [0, 360)
  double argument_of_latitude_deg = 0.0;       // at epoch, [0, 360)
  double eccentricity = 0.0;
  double epoch_s = 0.0;                        // simulation-time origin of the elements
};

void validate(const OrbitalElements& el, const EarthModel& earth = {});

struct WalkerSpec {
  int total_satellites = 0;
  int planes = 0;
  int phasing = 0;
  double altitude_km = 0.0;
  double inclination_deg = 0.0;
};

// Walker(N:P:F). Plane k carries RAAN k*360/P; satellite j of plane k sits at
// argument of latitude (j*360*P/N + k*360*F/N) mod 360. Throws
// InvalidWalkerSpec unless P divides N and 0 <= F < P.
std::vector<OrbitalElements> generate_walker(const WalkerSpec& spec, const EarthModel& earth = {});

struct SatelliteState {
  std::uint32_t satellite_id = 0;
  std::uint32_t layer_index = 0;
  GeodeticPosition position;
  EcefVector ecef;
  double velocity_km_s = 0.0;
  OrbitalElements elements;
};

double mean_motion(double semi_major_axis_km, const EarthModel& earth = {});
double orbital_period(double semi_major_axis_km, const EarthModel& earth = {});
double circular_velocity(double semi_major_axis_km, const EarthModel& earth = {});

// Position at simulation time `t_s`. The argument of latitude advances at the
// Keplerian rate (or at velocity_override / a when an override is given) from
// the element epoch; the inertial position is then rotated by -w_E * t_s into
// the Earth-fixed frame, with the two frames aligned at t = 0.
SatelliteState propagate_circular(const OrbitalElements& el, double t_s,
                                  const EarthModel& earth = {},
                                  std::optional<double> velocity_override_km_s = std::nullopt);

// Longest possible visibility pass (zenith pass) in minutes for a circular
// orbit at `altitude_km`, elevation mask `min_elevation_deg` and inclination
// `inclination_deg`; the along-track Earth-rotation component is removed
// from the orbital rate.
double analytic_max_pass_duration(double altitude_km, double min_elevation_deg,
                                  double inclination_deg, const EarthModel& earth = {});

}  // namespace orbnet
