#pragma once

// Reader for the standard 69-column two-line element format. An optional
// name line may precede each pair. Both lines carry a mod-10 checksum in
// column 69 (digits count their value, '-' counts one).

#include <string>
#include <string_view>
#include <vector>

#include "orbnet/orbit.hpp"

namespace orbnet {

struct TleRecord {
  std::string name;
  int catalog_number = 0;
  int epoch_year = 0;           // four-digit year
  double epoch_day = 0.0;       // fractional day of year, 1-based
  double mean_motion_rev_per_day = 0.0;
  double mean_anomaly_deg = 0.0;
  double argument_of_perigee_deg = 0.0;
  OrbitalElements elements;
};

// Checksum digit expected in column 69 of a TLE line.
int tle_checksum(std::string_view line);

// Parses every record in `text`. Element epochs are expressed in seconds
// relative to the earliest record so a set propagates coherently from t = 0.
// Throws LineError(kTleChecksum | kTleFormat) with the 1-based line number.
std::vector<TleRecord> parse_tle_records(std::string_view text, const EarthModel& earth = {});

std::vector<OrbitalElements> parse_tle(std::string_view text, const EarthModel& earth = {});

std::vector<OrbitalElements> load_tle_file(const std::string& path, const EarthModel& earth = {});

}  // namespace orbnet
