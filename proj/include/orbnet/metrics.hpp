#pragma once

// Headline metrics: aggregate and per-UE capacity, visibility period,
// handover rate, coverage area and propagation delay.

#include <cstdint>
#include <vector>

#include "orbnet/association.hpp"
#include "orbnet/constellation.hpp"

namespace orbnet {

// Sum of the link capacities of every satellite visible from a cell.
double aggregate_cell_capacity(const std::vector<Candidate>& visible_links);

// cell_capacity / n. Throws ZeroUsers when n < 1.
double per_ue_capacity(double cell_capacity_bps, long long n);

// n_cell / visibility_period. Throws NonPositiveInput unless period > 0.
double handover_rate(double n_cell, double visibility_period_s);

// Mean slant-range delay over served UEs, ms. Throws NoServedUsers.
double mean_propagation_delay(const AssociationMap& map);

struct VisibilityGrid {
  std::vector<double> latitudes_deg{0.0, 30.0, -30.0, 60.0, -60.0};
  std::vector<double> longitudes_deg{0.0};
  double time_step_s = 10.0;
  double horizon_s = 86400.0;

  bool operator==(const VisibilityGrid&) const = default;
};

struct VisibilityStats {
  double mean_period_s = 0.0;
  std::size_t passes = 0;
  std::size_t full_horizon_passes = 0;
};

// Mean contiguous visibility of the layer's satellites from every grid site.
// Rise and set instants are interpolated between samples; passes cut by the
// horizon are discarded, except a satellite visible throughout, which counts
// as one pass of the full horizon. Throws NoPassObserved when nothing counts.
VisibilityStats visibility_period(const Constellation& constellation, std::size_t layer_index,
                                  double min_elevation_deg, const VisibilityGrid& grid,
                                  const EarthModel& earth = {});

// Spherical cap seen above the elevation mask, given by its centre direction
// and Earth-central half angle.
struct Footprint {
  EcefVector centre_unit;
  double half_angle_rad = 0.0;
};

std::vector<Footprint> visibility_footprints(const std::vector<SatelliteState>& satellites,
                                             double min_elevation_deg,
                                             const EarthModel& earth = {});

// Area of one satellite's visibility cap, km².
double footprint_area(double altitude_km, double min_elevation_deg, const EarthModel& earth = {});

struct CoverageEstimate {
  double area_km2 = 0.0;
  double standard_error_km2 = 0.0;
  std::size_t samples = 0;
};

// Area of the union of footprints by uniform-on-sphere Monte Carlo. Sample i
// depends only on (seed, i).
CoverageEstimate coverage_area(const std::vector<Footprint>& footprints, std::size_t samples,
                               std::uint64_t seed, const EarthModel& earth = {});

}  // namespace orbnet
