#pragma once

// Scenario configuration text format.
//
//   # comment
//   [scenario]            name, seed, n_ues, duration, time_step, min_elevation,
//                         active_fraction, direction, metrics, coverage_samples
//   [constellation]       preset
//   [layer.<id>]          orbit_class, altitude, cell_radius, beams, satellites,
//                         walker = N:P:F@inc[, ...], velocity_override, tle,
//                         max_satellites
//   [radio.<id>]          downlink_eirp, downlink_g_over_t, downlink_bandwidth,
//                         downlink_frequency, and the uplink_ equivalents
//   [ue_region]           kind = global | lat_band | disk, lat_min, lat_max,
//                         centre_lat, centre_lon, radius
//   [association]         policy, max_rounds, beam_membership
//   [loss]                environment, rain_margin, shadowing_sigma,
//                         atmospheric, rain, scintillation, shadowing (true/false),
//                         atmospheric_table, scintillation_table
//   [visibility]          latitudes, longitudes, time_step, horizon
//   [sweep]               param, values, cell_radius
//
// A preset supplies its layers; a [layer.<id>] section with a preset layer's
// id overrides that layer's keys, any other id appends a layer. Units are km,
// degrees, seconds, dBW, dB/K, Hz and km/s. Unknown sections and keys are
// rejected.

#include <string>
#include <string_view>

#include "orbnet/scenario.hpp"

namespace orbnet {

// Throws LineError(Parse) for malformed text and ValidationError naming the
// key path for unknown keys or invalid values.
ScenarioConfig parse_config(std::string_view text);

// Throws Io when the file cannot be read.
ScenarioConfig load_config(const std::string& path);

// Complete, explicit text form; parse_config(format_config(c)) == c.
std::string format_config(const ScenarioConfig& cfg);

}  // namespace orbnet
