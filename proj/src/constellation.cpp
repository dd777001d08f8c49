#include "orbnet/constellation.hpp"

#include <algorithm>
#include <cmath>

#include "orbnet/error.hpp"
#include "orbnet/random.hpp"
#include "orbnet/tle.hpp"

namespace orbnet {

std::string_view to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::kLowLeo: return "low_leo";
    case OrbitClass::kLeo: return "leo";
    case OrbitClass::kMeo: return "meo";
  }
  return "leo";
}

OrbitClass orbit_class_from_string(std::string_view s) {
  if (s == "low_leo") return OrbitClass::kLowLeo;
  if (s == "leo") return OrbitClass::kLeo;
  if (s == "meo") return OrbitClass::kMeo;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown orbit class '" + std::string(s) + "' (expected low_leo, leo or meo)");
}

void validate(const ConstellationLayer& layer) {
  auto fail = [&](const std::string& what) {
    throw ValidationError("layer." + layer.layer_id + "." + what, "must be positive");
  };
  if (layer.tle_path.empty() && layer.satellite_count <= 0) fail("satellites");
  if (!(layer.altitude_km > 0.0)) fail("altitude");
  if (!(layer.cell_radius_km > 0.0)) fail("cell_radius");
  if (layer.beams_per_satellite <= 0) fail("beams");
  if (layer.max_satellites && *layer.max_satellites <= 0) fail("max_satellites");
  if (layer.velocity_override_km_s && !(*layer.velocity_override_km_s >= 0.0))
    throw ValidationError("layer." + layer.layer_id + ".velocity_override", "must be >= 0");
  if (layer.tle_path.empty()) {
    if (layer.shells.empty())
      throw ValidationError("layer." + layer.layer_id + ".walker", "needs a Walker shell or a TLE file");
    int total = 0;
    for (const auto& s : layer.shells) total += s.total_satellites;
    if (total != layer.satellite_count)
      throw ValidationError("layer." + layer.layer_id + ".satellites",
                            "Walker shells hold " + std::to_string(total) + " satellites, not " +
                                std::to_string(layer.satellite_count));
  }
}

std::vector<ConstellationLayer> starlink_preset(const std::string& tle_path) {
  ConstellationLayer leo;
  leo.layer_id = "starlink";
  leo.orbit_class = OrbitClass::kLeo;
  leo.satellite_count = 6937;
  leo.altitude_km = 600.0;
  leo.cell_radius_km = 600.0;
  leo.beams_per_satellite = 61;
  // Approximation of the operational shells (53, 53.2, 70, 97.6 and 43 deg),
  // all flown at the preset altitude.
  leo.shells = {{1584, 72, 1, 53.0},
                {1584, 72, 1, 53.2},
                {720, 36, 1, 70.0},
                {348, 6, 1, 97.6},
                {2701, 73, 1, 43.0}};
  leo.tle_path = tle_path;
  return {leo};
}

std::vector<ConstellationLayer> iris2_preset() {
  ConstellationLayer leo;
  leo.layer_id = "iris2_leo";
  leo.orbit_class = OrbitClass::kLeo;
  leo.satellite_count = 264;
  leo.altitude_km = 1200.0;
  leo.cell_radius_km = 1200.0;
  leo.shells = {{264, 12, 1, 88.0}};

  ConstellationLayer low;
  low.layer_id = "iris2_low_leo";
  low.orbit_class = OrbitClass::kLowLeo;
  low.satellite_count = 10;
  low.altitude_km = 400.0;
  low.cell_radius_km = 600.0;
  low.shells = {{10, 5, 1, 53.0}};

  ConstellationLayer meo;
  meo.layer_id = "iris2_meo";
  meo.orbit_class = OrbitClass::kMeo;
  meo.satellite_count = 18;
  meo.altitude_km = 8000.0;
  meo.cell_radius_km = 2500.0;
  meo.shells = {{18, 6, 1, 50.0}};

  return {leo, low, meo};
}

std::vector<ConstellationLayer> preset_by_name(std::string_view name) {
  if (name == "starlink") return starlink_preset();
  if (name == "iris2") return iris2_preset();
  throw Error(ErrorCode::kInvalidArgument,
              "unknown preset '" + std::string(name) + "' (expected starlink or iris2)");
}

std::size_t Constellation::count_in_layer(std::size_t layer_index) const {
  return static_cast<std::size_t>(std::count_if(
      satellites.begin(), satellites.end(),
      [&](const SatelliteRecord& s) { return s.layer_index == layer_index; }));
}

Constellation build_constellation(std::vector<ConstellationLayer> layers, std::uint64_t seed,
                                  const EarthModel& earth) {
  Constellation out;
  std::uint32_t next_id = 0;
  for (std::size_t li = 0; li < layers.size(); ++li) {
    ConstellationLayer& layer = layers[li];
    std::vector<OrbitalElements> elements;
    if (!layer.tle_path.empty()) {
      elements = load_tle_file(layer.tle_path, earth);
      if (elements.empty())
        throw ValidationError("layer." + layer.layer_id + ".tle", "TLE file holds no records");
      layer.satellite_count = static_cast<int>(elements.size());
    } else {
      for (const auto& shell : layer.shells) {
        const auto shell_elements = generate_walker(
            {shell.total_satellites, shell.planes, shell.phasing, layer.altitude_km,
             shell.inclination_deg},
            earth);
        elements.insert(elements.end(), shell_elements.begin(), shell_elements.end());
      }
    }
    validate(layer);

    std::vector<std::uint32_t> keep(elements.size());
    for (std::uint32_t i = 0; i < keep.size(); ++i) keep[i] = i;
    if (layer.max_satellites && static_cast<std::size_t>(*layer.max_satellites) < elements.size()) {
      keep = seeded_permutation(elements.size(), derive_seed(stream_seed(seed, SeedStream::kSubsample), li));
      keep.resize(static_cast<std::size_t>(*layer.max_satellites));
      std::sort(keep.begin(), keep.end());
    }
    for (const std::uint32_t idx : keep) {
      out.satellites.push_back({next_id++, static_cast<std::uint32_t>(li), elements[idx]});
    }
  }
  out.layers = std::move(layers);
  return out;
}

Constellation degrade_constellation(const Constellation& constellation, double active_fraction,
                                    std::uint64_t seed) {
  if (!(active_fraction > 0.0 && active_fraction <= 1.0))
    throw Error(ErrorCode::kInvalidFraction,
                "active fraction must lie in (0, 1]: " + std::to_string(active_fraction));
  if (active_fraction == 1.0) return constellation;

  Constellation out;
  out.layers = constellation.layers;
  std::vector<std::vector<std::size_t>> by_layer(constellation.layers.size());
  for (std::size_t i = 0; i < constellation.satellites.size(); ++i)
    by_layer[constellation.satellites[i].layer_index].push_back(i);

  std::vector<std::size_t> kept;
  for (std::size_t li = 0; li < by_layer.size(); ++li) {
    const auto& members = by_layer[li];
    const auto retain = static_cast<std::size_t>(
        std::floor(active_fraction * static_cast<double>(members.size())));
    const auto perm =
        seeded_permutation(members.size(), derive_seed(stream_seed(seed, SeedStream::kDegradation), li));
    for (std::size_t k = 0; k < retain; ++k) kept.push_back(members[perm[k]]);
  }
  std::sort(kept.begin(), kept.end());
  out.satellites.reserve(kept.size());
  for (const std::size_t i : kept) out.satellites.push_back(constellation.satellites[i]);
  return out;
}

SatelliteState propagate(const SatelliteRecord& sat, const Constellation& constellation, double t_s,
                         const EarthModel& earth) {
  const ConstellationLayer& layer = constellation.layers.at(sat.layer_index);
  SatelliteState s = propagate_circular(sat.elements, t_s, earth, layer.velocity_override_km_s);
  s.satellite_id = sat.satellite_id;
  s.layer_index = sat.layer_index;
  return s;
}

std::vector<BeamOffset> beam_layout(int beam_count, double cell_radius_km) {
  if (beam_count <= 0) return {};
  // Axial hex directions; walking them k times each traces ring k.
  constexpr int kDirs[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  std::vector<std::pair<int, std::pair<int, int>>> cells{{0, {0, 0}}};
  for (int ring = 1; static_cast<int>(cells.size()) < beam_count; ++ring) {
    int q = kDirs[4][0] * ring;
    int r = kDirs[4][1] * ring;
    for (int side = 0; side < 6; ++side) {
      for (int step = 0; step < ring; ++step) {
        cells.push_back({ring, {q, r}});
        q += kDirs[side][0];
        r += kDirs[side][1];
      }
    }
  }
  cells.resize(static_cast<std::size_t>(beam_count));

  const int outer_ring = cells.back().first;
  const double beam_radius = cell_radius_km / 10.0;
  double spacing = std::sqrt(3.0) * beam_radius;
  if (outer_ring > 0) spacing = std::min(spacing, (cell_radius_km - beam_radius) / outer_ring);

  std::vector<BeamOffset> out;
  out.reserve(cells.size());
  for (const auto& [ring, qr] : cells) {
    const double q = qr.first, r = qr.second;
    out.push_back({ring, spacing * (q + r / 2.0), spacing * (r * std::sqrt(3.0) / 2.0)});
  }
  return out;
}

std::vector<Beam> beams_for_satellite(const SatelliteState& sat, const ConstellationLayer& layer,
                                      const EarthModel& earth) {
  const GeodeticPosition nadir{sat.position.latitude_deg, sat.position.longitude_deg, 0.0};
  const auto layout = beam_layout(layer.beams_per_satellite, layer.cell_radius_km);
  std::vector<Beam> beams;
  beams.reserve(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const BeamOffset& o = layout[i];
    const double dist = std::hypot(o.east_km, o.north_km);
    const GeodeticPosition centre =
        dist == 0.0 ? nadir
                    : destination_point(nadir, rad_to_deg(std::atan2(o.east_km, o.north_km)), dist, earth);
    beams.push_back({static_cast<std::uint32_t>(i), sat.satellite_id, centre, layer.beam_radius_km()});
  }
  return beams;
}

}  // namespace orbnet
