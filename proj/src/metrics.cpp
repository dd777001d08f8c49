#include "orbnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbnet/error.hpp"
#include "orbnet/random.hpp"
#include "parallel.hpp"

namespace orbnet {

double aggregate_cell_capacity(const std::vector<Candidate>& visible_links) {
  double total = 0.0;
  for (const Candidate& c : visible_links) total += c.capacity_bps;
  return total;
}

double per_ue_capacity(double cell_capacity_bps, long long n) {
  if (n < 1) throw Error(ErrorCode::kZeroUsers, "per-UE capacity needs at least one UE");
  return cell_capacity_bps / static_cast<double>(n);
}

double handover_rate(double n_cell, double visibility_period_s) {
  if (!(visibility_period_s > 0.0))
    throw Error(ErrorCode::kNonPositiveInput, "visibility period must be positive");
  return n_cell / visibility_period_s;
}

double mean_propagation_delay(const AssociationMap& map) {
  double sum = 0.0;
  std::size_t served = 0;
  for (const auto& e : map.entries) {
    if (!e) continue;
    sum += propagation_delay_ms(e->link.slant_range_km);
    ++served;
  }
  if (served == 0) throw Error(ErrorCode::kNoServedUsers, "no served UEs");
  return sum / static_cast<double>(served);
}

namespace {

struct PassTally {
  double total_s = 0.0;
  std::size_t passes = 0;
  std::size_t full = 0;
};

double elevation_from_sine(double s) { return rad_to_deg(std::asin(std::clamp(s, -1.0, 1.0))); }

}  // namespace

VisibilityStats visibility_period(const Constellation& constellation, std::size_t layer_index,
                                  double min_elevation_deg, const VisibilityGrid& grid,
                                  const EarthModel& earth) {
  if (layer_index >= constellation.layers.size())
    throw Error(ErrorCode::kInvalidArgument, "layer index out of range");
  if (!(grid.time_step_s > 0.0) || !(grid.horizon_s >= grid.time_step_s))
    throw Error(ErrorCode::kNonPositiveInput, "visibility grid needs 0 < time_step <= horizon");
  if (grid.latitudes_deg.empty() || grid.longitudes_deg.empty())
    throw Error(ErrorCode::kInvalidArgument, "visibility grid has no sites");

  std::vector<EcefVector> sites;
  std::vector<EcefVector> ups;
  for (double lat : grid.latitudes_deg)
    for (double lon : grid.longitudes_deg) {
      const GeodeticPosition p{lat, lon, 0.0};
      validate(p);
      sites.push_back(geodetic_to_ecef(p, earth));
      ups.push_back(sites.back().unit());
    }

  std::vector<const SatelliteRecord*> members;
  for (const auto& sat : constellation.satellites)
    if (sat.layer_index == layer_index) members.push_back(&sat);

  const auto steps = static_cast<std::size_t>(std::floor(grid.horizon_s / grid.time_step_s)) + 1;
  const double horizon = static_cast<double>(steps - 1) * grid.time_step_s;
  const double sin_mask = std::sin(deg_to_rad(min_elevation_deg));

  std::vector<PassTally> tallies(members.size());
  detail::parallel_for(members.size(), [&](std::size_t m) {
    struct SiteState {
      bool visible = false;
      bool always = true;
      double rise_s = -1.0;  // negative: rise not observed
      double prev_sine = 0.0;
    };
    std::vector<SiteState> state(sites.size());
    PassTally& tally = tallies[m];
    for (std::size_t k = 0; k < steps; ++k) {
      const double t = static_cast<double>(k) * grid.time_step_s;
      const EcefVector sat = propagate(*members[m], constellation, t, earth).ecef;
      for (std::size_t s = 0; s < sites.size(); ++s) {
        const EcefVector los = sat - sites[s];
        const double sine = los.dot(ups[s]) / los.norm();
        const bool visible = sine >= sin_mask;
        SiteState& st = state[s];
        if (k > 0 && visible != st.visible) {
          const double e0 = elevation_from_sine(st.prev_sine);
          const double e1 = elevation_from_sine(sine);
          const double crossing = t - grid.time_step_s + grid.time_step_s *
                                                             (min_elevation_deg - e0) / (e1 - e0);
          if (visible) {
            st.rise_s = crossing;
          } else if (st.rise_s >= 0.0) {
            tally.total_s += crossing - st.rise_s;
            ++tally.passes;
          }
        }
        if (!visible) st.always = false;
        st.visible = visible;
        st.prev_sine = sine;
      }
    }
    for (const SiteState& st : state)
      if (st.always) {
        tally.total_s += horizon;
        ++tally.passes;
        ++tally.full;
      }
  });

  VisibilityStats out;
  double total = 0.0;
  for (const PassTally& t : tallies) {
    total += t.total_s;
    out.passes += t.passes;
    out.full_horizon_passes += t.full;
  }
  if (out.passes == 0)
    throw Error(ErrorCode::kNoPassObserved,
                "no complete pass of layer '" + constellation.layers[layer_index].layer_id +
                    "' within the simulation horizon");
  out.mean_period_s = total / static_cast<double>(out.passes);
  return out;
}

std::vector<Footprint> visibility_footprints(const std::vector<SatelliteState>& satellites,
                                             double min_elevation_deg, const EarthModel& earth) {
  std::vector<Footprint> out;
  out.reserve(satellites.size());
  for (const SatelliteState& s : satellites)
    out.push_back({s.ecef.unit(),
                   visibility_half_angle(s.position.altitude_km, min_elevation_deg, earth)});
  return out;
}

double footprint_area(double altitude_km, double min_elevation_deg, const EarthModel& earth) {
  const double beta = visibility_half_angle(altitude_km, min_elevation_deg, earth);
  return spherical_cap_area(beta * earth.radius_km, earth);
}

CoverageEstimate coverage_area(const std::vector<Footprint>& footprints, std::size_t samples,
                               std::uint64_t seed, const EarthModel& earth) {
  if (samples == 0) throw Error(ErrorCode::kNonPositiveInput, "coverage needs at least one sample");
  std::vector<double> cos_half(footprints.size());
  for (std::size_t i = 0; i < footprints.size(); ++i)
    cos_half[i] = std::cos(footprints[i].half_angle_rad);

  const std::uint64_t base = stream_seed(seed, SeedStream::kCoverage);
  std::vector<unsigned char> hit(samples, 0);
  detail::parallel_for(samples, [&](std::size_t i) {
    const std::uint64_t key = derive_seed(base, i);
    const double z = 2.0 * to_unit_interval(mix64(key)) - 1.0;
    const double phi = 2.0 * std::numbers::pi * to_unit_interval(mix64(key ^ 0x5bd1e995ull));
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const EcefVector p{r * std::cos(phi), r * std::sin(phi), z};
    for (std::size_t f = 0; f < footprints.size(); ++f)
      if (footprints[f].centre_unit.dot(p) >= cos_half[f]) {
        hit[i] = 1;
        break;
      }
  });

  std::size_t covered = 0;
  for (unsigned char h : hit) covered += h;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(covered) / n;
  const double sphere = 4.0 * std::numbers::pi * earth.radius_km * earth.radius_km;
  return {sphere * p, sphere * std::sqrt(p * (1.0 - p) / n), samples};
}

}  // namespace orbnet
