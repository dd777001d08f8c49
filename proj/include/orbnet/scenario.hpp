#pragma once

// Scenario configuration, UE deployment, and time-stepped runs and sweeps.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbnet/association.hpp"
#include "orbnet/constellation.hpp"
#include "orbnet/link_budget.hpp"
#include "orbnet/metrics.hpp"

namespace orbnet {

struct UeRegion {
  enum class Kind { kGlobal, kLatBand, kDisk };
  Kind kind = Kind::kGlobal;
  double lat_min_deg = -90.0;  // lat_band
  double lat_max_deg = 90.0;
  double centre_lat_deg = 0.0;  // disk
  double centre_lon_deg = 0.0;
  double radius_km = 0.0;

  // Point used as the reference cell centre for aggregate capacity.
  GeodeticPosition reference() const;

  bool operator==(const UeRegion&) const = default;
};

std::string_view to_string(UeRegion::Kind k);
UeRegion::Kind region_kind_from_string(std::string_view s);

// n positions uniform on the sphere restricted to the region. Throws
// EmptyRegion for a region of zero area that is not a single point, and
// ZeroUsers for n < 1.
std::vector<GeodeticPosition> deploy_ues(const UeRegion& region, long long n, std::uint64_t seed,
                                         const EarthModel& earth = {});

struct LayerRadio {
  RadioParams downlink;
  RadioParams uplink;

  bool operator==(const LayerRadio&) const = default;
};

// Downlink 36.02 dBW / 21.44 dB/K at 20 GHz for every class; uplink
// 45.01 dBW / 5.0 dB/K (LEO classes) or 48.01 dBW / 8.0 dB/K (MEO) at 30 GHz.
LayerRadio default_layer_radio(OrbitClass orbit_class);

enum class SweepParam { kNUes, kActiveFraction, kAltitude, kPolicy };

std::string_view to_string(SweepParam p);
SweepParam sweep_param_from_string(std::string_view s);

struct SweepSpec {
  SweepParam param = SweepParam::kNUes;
  std::vector<std::string> values;           // numbers, or policy names
  std::vector<double> cell_radius_km;        // optional, paired with altitude values

  bool operator==(const SweepSpec&) const = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::string preset;                        // preset the layers came from, if any
  std::vector<ConstellationLayer> layers;
  std::vector<LayerRadio> radio;             // parallel to layers
  long long n_ues = 0;
  UeRegion ue_region;
  double min_elevation_deg = 20.0;
  AssociationPolicy policy = AssociationPolicy::kBestSnr;
  BeamMembership beam_membership = BeamMembership::kNearest;
  int max_rounds = 20;
  LinkDirection direction = LinkDirection::kDownlink;
  LossModelConfig loss;
  std::string atmospheric_table_path;        // empty: bundled table
  std::string scintillation_table_path;
  double duration_s = 0.0;                   // 0: two periods of the lowest layer
  double time_step_s = 10.0;
  std::uint64_t seed = 1;
  double active_fraction = 1.0;
  std::vector<std::string> metrics;          // empty: all
  VisibilityGrid visibility;
  std::size_t coverage_samples = 100000;
  std::optional<SweepSpec> sweep;

  bool operator==(const ScenarioConfig&) const = default;
};

// Throws ValidationError naming the offending key.
void validate(const ScenarioConfig& cfg);

// Scenario over a preset's layers with default radio parameters.
ScenarioConfig scenario_from_preset(std::string_view preset);

// Metric families accepted in ScenarioConfig::metrics.
const std::vector<std::string>& metric_families();

struct MetricValue {
  std::string name;
  double value = 0.0;
  std::string unit;
};

struct MetricsReport {
  std::vector<MetricValue> values;

  const MetricValue* find(std::string_view name) const;
  double at(std::string_view name) const;  // throws InvalidArgument if absent
};

struct StepSnapshot {
  double time_s = 0.0;
  std::size_t satellites = 0;
  std::size_t served = 0;
  std::size_t unserved = 0;
  double aggregate_capacity_bps = 0.0;
  double per_ue_capacity_mean_bps = 0.0;
  bool converged = true;
};

struct ScenarioResult {
  MetricsReport report;
  std::vector<StepSnapshot> snapshots;  // filled when requested
};

struct RunOptions {
  bool keep_snapshots = false;
  std::uint64_t sweep_index = 0;        // selects the association-order sub-seed
};

// Duration actually simulated (applies the two-period default).
double effective_duration(const ScenarioConfig& cfg, const EarthModel& earth = {});

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& options = {},
                            const EarthModel& earth = {});

// The configuration a sweep uses for one value.
ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, const SweepSpec& sweep,
                                 std::size_t index);

struct SweepPoint {
  std::string value;
  MetricsReport report;
};

std::vector<SweepPoint> sweep(const ScenarioConfig& cfg, const SweepSpec& spec,
                              const EarthModel& earth = {});

}  // namespace orbnet
