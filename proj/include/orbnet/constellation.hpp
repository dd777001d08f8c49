#pragma once

// Constellation layers, the multibeam cell layout and the Starlink / IRIS²
// presets.
//
// A layer is a group of identical satellites (same altitude, cell radius and
// beam count) whose orbits come either from Walker-delta shells or from a TLE
// file. Beams travel with their satellite: the cell is centred on the
// sub-satellite point and the beam lattice is oriented to local north there.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbnet/orbit.hpp"

namespace orbnet {

enum class OrbitClass { kLowLeo, kLeo, kMeo };

std::string_view to_string(OrbitClass c);
OrbitClass orbit_class_from_string(std::string_view s);

// One Walker-delta shell of a layer; the altitude comes from the layer.
struct WalkerShell {
  int total_satellites = 0;
  int planes = 0;
  int phasing = 0;
  double inclination_deg = 0.0;

  bool operator==(const WalkerShell&) const = default;
};

struct ConstellationLayer {
  std::string layer_id;
  OrbitClass orbit_class = OrbitClass::kLeo;
  int satellite_count = 0;
  double altitude_km = 0.0;
  double cell_radius_km = 0.0;
  int beams_per_satellite = 61;
  std::optional<double> velocity_override_km_s;
  std::vector<WalkerShell> shells;   // orbit source when tle_path is empty
  std::string tle_path;
  // Desk-scale runs may keep only this many satellites (seeded subsample).
  std::optional<int> max_satellites;

  double beam_radius_km() const { return cell_radius_km / 10.0; }

  bool operator==(const ConstellationLayer&) const = default;
};

void validate(const ConstellationLayer& layer);

// One LEO layer: 6937 satellites at 600 km, 600 km cells, 61 beams. Without a
// TLE file the orbits come from a five-shell Walker approximation of the
// operational shells.
std::vector<ConstellationLayer> starlink_preset(const std::string& tle_path = {});

// LEO 264 @ 1200 km (1200 km cells), Low-LEO 10 @ 400 km (600 km cells),
// MEO 18 @ 8000 km (2500 km cells); 61 beams each.
std::vector<ConstellationLayer> iris2_preset();

// "starlink" or "iris2"; throws Error(kInvalidArgument) otherwise.
std::vector<ConstellationLayer> preset_by_name(std::string_view name);

// A satellite with its orbit and the layer it belongs to. Ids are unique
// across a Constellation and survive degradation.
struct SatelliteRecord {
  std::uint32_t satellite_id = 0;
  std::uint32_t layer_index = 0;
  OrbitalElements elements;
};

struct Constellation {
  std::vector<ConstellationLayer> layers;
  std::vector<SatelliteRecord> satellites;

  std::size_t count_in_layer(std::size_t layer_index) const;
};

// Expands every layer into satellites (Walker shells or TLE records), applying
// max_satellites subsampling with `seed`. satellite_count is checked against
// the Walker shells; for TLE layers it is replaced by the record count.
Constellation build_constellation(std::vector<ConstellationLayer> layers,
                                  std::uint64_t seed = 0, const EarthModel& earth = {});

// Keeps floor(active_fraction * count) satellites of each layer. The survivors
// are a prefix of a seeded permutation, so for one seed the set kept at a
// smaller fraction is always a subset of the set kept at a larger one.
Constellation degrade_constellation(const Constellation& constellation, double active_fraction,
                                    std::uint64_t seed);

SatelliteState propagate(const SatelliteRecord& sat, const Constellation& constellation,
                         double t_s, const EarthModel& earth = {});

struct Beam {
  std::uint32_t beam_id = 0;
  std::uint32_t parent_satellite_id = 0;
  GeodeticPosition boresight;
  double ground_radius_km = 0.0;
};

// Planar offset of a beam centre from the nadir point in the local
// east/north frame, km.
struct BeamOffset {
  int ring = 0;
  double east_km = 0.0;
  double north_km = 0.0;
};

// Hexagonal lattice, filled ring by ring (1, 6, 12, 18, 24, ... centres).
// Neighbouring centres sit sqrt(3) beam radii apart so the disks tile the
// plane with partial overlap; the spacing shrinks if needed so the outer ring
// stays within cell_radius - beam_radius.
std::vector<BeamOffset> beam_layout(int beam_count, double cell_radius_km);

std::vector<Beam> beams_for_satellite(const SatelliteState& sat, const ConstellationLayer& layer,
                                      const EarthModel& earth = {});

}  // namespace orbnet
