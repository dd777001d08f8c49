#include "orbnet/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "orbnet/error.hpp"
#include "orbnet/random.hpp"
#include "parallel.hpp"

namespace orbnet {

namespace {

// Shadowing key of the cell-centre reference site; UE ids are below it.
constexpr std::uint32_t kCellReferenceId = 0xFFFFFFFFu;

constexpr std::string_view kFamilyCapacity = "capacity";
constexpr std::string_view kFamilyVisibility = "visibility";
constexpr std::string_view kFamilyHandover = "handover_events";
constexpr std::string_view kFamilyCoverage = "coverage";
constexpr std::string_view kFamilyDelay = "delay";

bool wants(const ScenarioConfig& cfg, std::string_view family) {
  return cfg.metrics.empty() ||
         std::find(cfg.metrics.begin(), cfg.metrics.end(), family) != cfg.metrics.end();
}

double parse_number(const std::string& text, const std::string& key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ValidationError(key, "'" + text + "' is not a number");
  return v;
}

long long parse_count(const std::string& text, const std::string& key) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ValidationError(key, "'" + text + "' is not an integer");
  return v;
}

}  // namespace

std::string_view to_string(UeRegion::Kind k) {
  switch (k) {
    case UeRegion::Kind::kGlobal: return "global";
    case UeRegion::Kind::kLatBand: return "lat_band";
    case UeRegion::Kind::kDisk: return "disk";
  }
  return "global";
}

UeRegion::Kind region_kind_from_string(std::string_view s) {
  if (s == "global") return UeRegion::Kind::kGlobal;
  if (s == "lat_band") return UeRegion::Kind::kLatBand;
  if (s == "disk") return UeRegion::Kind::kDisk;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown UE region '" + std::string(s) + "' (expected global, lat_band or disk)");
}

GeodeticPosition UeRegion::reference() const {
  switch (kind) {
    case Kind::kGlobal: return {0.0, 0.0, 0.0};
    case Kind::kLatBand: return {0.5 * (lat_min_deg + lat_max_deg), 0.0, 0.0};
    case Kind::kDisk: return {centre_lat_deg, normalize_longitude(centre_lon_deg), 0.0};
  }
  return {};
}

std::vector<GeodeticPosition> deploy_ues(const UeRegion& region, long long n, std::uint64_t seed,
                                         const EarthModel& earth) {
  if (n < 1) throw Error(ErrorCode::kZeroUsers, "at least one UE must be deployed");
  Rng rng(stream_seed(seed, SeedStream::kUeDeployment));
  std::vector<GeodeticPosition> out;
  out.reserve(static_cast<std::size_t>(n));

  switch (region.kind) {
    case UeRegion::Kind::kGlobal:
    case UeRegion::Kind::kLatBand: {
      double lo = -90.0;
      double hi = 90.0;
      if (region.kind == UeRegion::Kind::kLatBand) {
        lo = region.lat_min_deg;
        hi = region.lat_max_deg;
        if (!(lo >= -90.0 && hi <= 90.0 && lo < hi))
          throw Error(ErrorCode::kEmptyRegion, "latitude band must satisfy -90 <= min < max <= 90");
      }
      const double z_lo = std::sin(deg_to_rad(lo));
      const double z_hi = std::sin(deg_to_rad(hi));
      for (long long i = 0; i < n; ++i) {
        const double z = rng.uniform(z_lo, z_hi);
        const double lon = rng.uniform(-180.0, 180.0);
        out.push_back({rad_to_deg(std::asin(std::clamp(z, -1.0, 1.0))), normalize_longitude(lon), 0.0});
      }
      break;
    }
    case UeRegion::Kind::kDisk: {
      const double max_radius = std::numbers::pi * earth.radius_km;
      if (!(region.radius_km >= 0.0 && region.radius_km <= max_radius))
        throw Error(ErrorCode::kEmptyRegion, "disk radius must lie in [0, pi R]");
      const GeodeticPosition centre = region.reference();
      validate(centre);
      const double cos_max = std::cos(region.radius_km / earth.radius_km);
      for (long long i = 0; i < n; ++i) {
        const double c = rng.uniform(cos_max, 1.0);
        const double bearing = rng.uniform(0.0, 360.0);
        const double dist = std::acos(std::clamp(c, -1.0, 1.0)) * earth.radius_km;
        out.push_back(dist == 0.0 ? centre : destination_point(centre, bearing, dist, earth));
      }
      break;
    }
  }
  return out;
}

LayerRadio default_layer_radio(OrbitClass orbit_class) {
  LayerRadio r;
  r.downlink = {LinkDirection::kDownlink, 36.02, 21.44, 400e6, 20e9};
  if (orbit_class == OrbitClass::kMeo) r.uplink = {LinkDirection::kUplink, 48.01, 8.0, 400e6, 30e9};
  else r.uplink = {LinkDirection::kUplink, 45.01, 5.0, 400e6, 30e9};
  return r;
}

std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::kNUes: return "n_ues";
    case SweepParam::kActiveFraction: return "active_fraction";
    case SweepParam::kAltitude: return "altitude";
    case SweepParam::kPolicy: return "policy";
  }
  return "n_ues";
}

SweepParam sweep_param_from_string(std::string_view s) {
  if (s == "n_ues") return SweepParam::kNUes;
  if (s == "active_fraction") return SweepParam::kActiveFraction;
  if (s == "altitude") return SweepParam::kAltitude;
  if (s == "policy") return SweepParam::kPolicy;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown sweep parameter '" + std::string(s) +
                  "' (expected n_ues, active_fraction, altitude or policy)");
}

const std::vector<std::string>& metric_families() {
  static const std::vector<std::string> families{
      std::string(kFamilyCapacity), std::string(kFamilyVisibility), std::string(kFamilyHandover),
      std::string(kFamilyCoverage), std::string(kFamilyDelay)};
  return families;
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.name.empty()) throw ValidationError("scenario.name", "must not be empty");
  if (cfg.layers.empty()) throw ValidationError("constellation", "at least one layer is required");
  if (cfg.radio.size() != cfg.layers.size())
    throw ValidationError("radio", "radio parameters are required for every layer");
  for (std::size_t i = 0; i < cfg.layers.size(); ++i) {
    validate(cfg.layers[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (cfg.layers[j].layer_id == cfg.layers[i].layer_id)
        throw ValidationError("layer." + cfg.layers[i].layer_id, "duplicate layer id");
    const std::string key = "radio." + cfg.layers[i].layer_id;
    for (const RadioParams* r : {&cfg.radio[i].downlink, &cfg.radio[i].uplink}) {
      if (!(r->bandwidth_hz > 0.0)) throw ValidationError(key + ".bandwidth", "must be positive");
      if (!(r->carrier_frequency_hz > 0.0))
        throw ValidationError(key + ".frequency", "must be positive");
    }
  }
  if (cfg.n_ues < 1) throw ValidationError("scenario.n_ues", "must be >= 1");
  if (cfg.n_ues > std::numeric_limits<std::uint32_t>::max() - 1)
    throw ValidationError("scenario.n_ues", "too large");
  if (!(cfg.min_elevation_deg >= 0.0 && cfg.min_elevation_deg < 90.0))
    throw ValidationError("scenario.min_elevation", "must lie in [0, 90)");
  if (!(cfg.time_step_s > 0.0)) throw ValidationError("scenario.time_step", "must be positive");
  if (cfg.duration_s != 0.0 && !(cfg.duration_s >= cfg.time_step_s))
    throw ValidationError("scenario.duration", "must be >= time_step (or 0 for the default)");
  if (!(cfg.active_fraction > 0.0 && cfg.active_fraction <= 1.0))
    throw ValidationError("scenario.active_fraction", "must lie in (0, 1]");
  if (cfg.max_rounds < 1) throw ValidationError("association.max_rounds", "must be >= 1");
  for (const std::string& m : cfg.metrics)
    if (std::find(metric_families().begin(), metric_families().end(), m) == metric_families().end())
      throw ValidationError("scenario.metrics", "unknown metric family '" + m + "'");
  if (cfg.coverage_samples < 1000)
    throw ValidationError("scenario.coverage_samples", "must be >= 1000");
  if (!(cfg.visibility.time_step_s > 0.0))
    throw ValidationError("visibility.time_step", "must be positive");
  if (!(cfg.visibility.horizon_s >= cfg.visibility.time_step_s))
    throw ValidationError("visibility.horizon", "must be >= visibility.time_step");
  if (cfg.visibility.latitudes_deg.empty())
    throw ValidationError("visibility.latitudes", "must not be empty");
  if (cfg.visibility.longitudes_deg.empty())
    throw ValidationError("visibility.longitudes", "must not be empty");
  for (double lat : cfg.visibility.latitudes_deg)
    if (!(lat >= -90.0 && lat <= 90.0))
      throw ValidationError("visibility.latitudes", "latitudes must lie in [-90, 90]");

  const UeRegion& r = cfg.ue_region;
  if (r.kind == UeRegion::Kind::kLatBand &&
      !(r.lat_min_deg >= -90.0 && r.lat_max_deg <= 90.0 && r.lat_min_deg < r.lat_max_deg))
    throw ValidationError("ue_region.lat_min", "latitude band must satisfy -90 <= min < max <= 90");
  if (r.kind == UeRegion::Kind::kDisk) {
    if (!(r.centre_lat_deg >= -90.0 && r.centre_lat_deg <= 90.0))
      throw ValidationError("ue_region.centre_lat", "must lie in [-90, 90]");
    if (!std::isfinite(r.centre_lon_deg))
      throw ValidationError("ue_region.centre_lon", "must be finite");
    if (!(r.radius_km >= 0.0)) throw ValidationError("ue_region.radius", "must be >= 0");
  }

  if (cfg.sweep) {
    const SweepSpec& s = *cfg.sweep;
    if (s.values.empty()) throw ValidationError("sweep.values", "must not be empty");
    if (!s.cell_radius_km.empty() &&
        (s.param != SweepParam::kAltitude || s.cell_radius_km.size() != s.values.size()))
      throw ValidationError("sweep.cell_radius",
                            "only valid for altitude sweeps, one radius per value");
    for (std::size_t i = 0; i < s.values.size(); ++i) validate(apply_sweep_value(cfg, s, i));
  }
}

ScenarioConfig scenario_from_preset(std::string_view preset) {
  ScenarioConfig cfg;
  cfg.name = std::string(preset);
  cfg.preset = std::string(preset);
  cfg.layers = preset_by_name(preset);
  for (const auto& layer : cfg.layers) cfg.radio.push_back(default_layer_radio(layer.orbit_class));
  cfg.n_ues = preset == "starlink" ? 30000 : 10000;
  return cfg;
}

const MetricValue* MetricsReport::find(std::string_view name) const {
  for (const MetricValue& v : values)
    if (v.name == name) return &v;
  return nullptr;
}

double MetricsReport::at(std::string_view name) const {
  if (const MetricValue* v = find(name)) return v->value;
  throw Error(ErrorCode::kInvalidArgument, "metric '" + std::string(name) + "' not in report");
}

double effective_duration(const ScenarioConfig& cfg, const EarthModel& earth) {
  if (cfg.duration_s > 0.0) return cfg.duration_s;
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& layer : cfg.layers) lowest = std::min(lowest, layer.altitude_km);
  return 2.0 * orbital_period(earth.radius_km + lowest, earth);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& options,
                            const EarthModel& earth) {
  validate(cfg);
  Constellation constellation = build_constellation(cfg.layers, cfg.seed, earth);
  if (cfg.active_fraction < 1.0)
    constellation = degrade_constellation(constellation, cfg.active_fraction, cfg.seed);

  const auto positions = deploy_ues(cfg.ue_region, cfg.n_ues, cfg.seed, earth);
  std::vector<UeSite> ues;
  ues.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i)
    ues.push_back(make_ue(static_cast<std::uint32_t>(i), positions[i], earth));
  const std::vector<UeSite> reference{make_ue(kCellReferenceId, cfg.ue_region.reference(), earth)};

  LinkContext ctx;
  ctx.constellation = &constellation;
  for (const LayerRadio& r : cfg.radio)
    ctx.radio_by_layer.push_back(cfg.direction == LinkDirection::kDownlink ? r.downlink : r.uplink);
  ctx.loss = cfg.loss;
  ctx.min_elevation_deg = cfg.min_elevation_deg;
  ctx.membership = cfg.beam_membership;
  ctx.shadowing_seed = cfg.seed;
  ctx.earth = earth;
  LinkContext cell_ctx = ctx;
  cell_ctx.membership = BeamMembership::kNearest;

  const double duration = effective_duration(cfg, earth);
  const auto steps = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(duration / cfg.time_step_s + 1e-9)));
  const double n = static_cast<double>(cfg.n_ues);
  const std::uint64_t order_seed = derive_seed(cfg.seed, options.sweep_index);

  double aggregate_sum = 0.0;
  double mean_sum = 0.0;
  double min_sum = 0.0;
  std::size_t served_steps = 0;
  double unserved_sum = 0.0;
  double delay_sum = 0.0;
  std::size_t delay_count = 0;
  std::size_t converged_steps = 0;
  std::size_t handover_events = 0;
  std::vector<std::int64_t> previous_serving(ues.size(), -1);
  const std::size_t layer_count = constellation.layers.size();
  std::vector<double> layer_delay_sum(layer_count, 0.0);
  std::vector<std::size_t> layer_delay_count(layer_count, 0);
  std::vector<std::size_t> layer_uncovered(layer_count, 0);
  std::vector<std::uint32_t> layer_of;
  for (const SatelliteRecord& sat : constellation.satellites) {
    if (sat.satellite_id >= layer_of.size()) layer_of.resize(sat.satellite_id + 1, 0);
    layer_of[sat.satellite_id] = sat.layer_index;
  }

  ScenarioResult result;
  std::vector<SatelliteState> states(constellation.satellites.size());
  std::vector<SatelliteState> initial_states;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * cfg.time_step_s;
    detail::parallel_for(states.size(), [&](std::size_t i) {
      states[i] = propagate(constellation.satellites[i], constellation, t, earth);
    });
    if (k == 0) initial_states = states;

    const double aggregate =
        aggregate_cell_capacity(candidate_links(reference, states, cell_ctx).front());
    const auto candidates = candidate_links(ues, states, ctx);
    const AssociationMap map =
        cfg.policy == AssociationPolicy::kBestSnr
            ? associate_best_snr(ues, candidates, cfg.min_elevation_deg)
            : associate_load_balancing(ues, candidates, cfg.min_elevation_deg,
                                       derive_seed(order_seed, k), cfg.max_rounds);
    const auto rates = map.per_ue_capacity();

    double sum = 0.0;
    double min_rate = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < ues.size(); ++u) {
      sum += rates[u];
      const auto& e = map.entries[u];
      const std::int64_t serving = e ? static_cast<std::int64_t>(e->link.satellite_id) : -1;
      if (e) {
        min_rate = std::min(min_rate, rates[u]);
        delay_sum += propagation_delay_ms(e->link.slant_range_km);
        ++delay_count;
        if (k > 0 && previous_serving[u] >= 0 && previous_serving[u] != serving) ++handover_events;
      }
      previous_serving[u] = serving;
    }
    // Layer-isolated view: the best-SNR link each layer alone would offer.
    for (const auto& list : candidates) {
      std::vector<const Candidate*> best(layer_count, nullptr);
      for (const Candidate& c : list) {
        const Candidate*& b = best[layer_of[c.satellite_id]];
        if (!b || c.snr_db > b->snr_db) b = &c;
      }
      for (std::size_t li = 0; li < layer_count; ++li) {
        if (!best[li]) {
          ++layer_uncovered[li];
          continue;
        }
        layer_delay_sum[li] += propagation_delay_ms(best[li]->slant_range_km);
        ++layer_delay_count[li];
      }
    }
    const std::size_t served = map.served_count();
    aggregate_sum += aggregate;
    if (served > 0) {
      mean_sum += sum / static_cast<double>(served);
      min_sum += min_rate;
      ++served_steps;
    }
    unserved_sum += static_cast<double>(ues.size() - served) / n;
    if (map.converged) ++converged_steps;

    if (options.keep_snapshots)
      result.snapshots.push_back({t, states.size(), served, ues.size() - served, aggregate,
                                  served > 0 ? sum / static_cast<double>(served) : 0.0,
                                  map.converged});
  }

  const double steps_d = static_cast<double>(steps);
  auto& out = result.report.values;
  out.push_back({"n_ues", n, "count"});
  if (wants(cfg, kFamilyCapacity)) {
    const double aggregate = aggregate_sum / steps_d;
    out.push_back({"aggregate_cell_capacity", aggregate, "bit/s"});
    out.push_back({"per_ue_capacity_cell", per_ue_capacity(aggregate, cfg.n_ues), "bit/s"});
    if (served_steps > 0) {
      const double observed = static_cast<double>(served_steps);
      out.push_back({"per_ue_capacity_mean", mean_sum / observed, "bit/s"});
      out.push_back({"per_ue_capacity_min", min_sum / observed, "bit/s"});
    }
    out.push_back({"unserved_fraction", unserved_sum / steps_d, "ratio"});
    out.push_back({"association_converged_fraction",
                   static_cast<double>(converged_steps) / steps_d, "ratio"});
    out.push_back({"active_satellites", static_cast<double>(constellation.satellites.size()),
                   "count"});
  }
  if (wants(cfg, kFamilyDelay) && delay_count > 0)
    out.push_back({"mean_propagation_delay", delay_sum / static_cast<double>(delay_count), "ms"});
  if (wants(cfg, kFamilyHandover)) {
    const double observed = static_cast<double>(steps - 1) * cfg.time_step_s;
    out.push_back({"handover_events_rate",
                   observed > 0.0 ? static_cast<double>(handover_events) / observed : 0.0, "UE/s"});
  }

  for (std::size_t li = 0; li < constellation.layers.size(); ++li) {
    const ConstellationLayer& layer = constellation.layers[li];
    if (constellation.count_in_layer(li) == 0) continue;
    if (wants(cfg, kFamilyCapacity))
      out.push_back({"unserved_fraction." + layer.layer_id,
                     static_cast<double>(layer_uncovered[li]) / (steps_d * n), "ratio"});
    if (wants(cfg, kFamilyDelay) && layer_delay_count[li] > 0)
      out.push_back({"mean_propagation_delay." + layer.layer_id,
                     layer_delay_sum[li] / static_cast<double>(layer_delay_count[li]), "ms"});
    if (wants(cfg, kFamilyVisibility)) {
      VisibilityGrid grid = cfg.visibility;
      grid.horizon_s =
          std::max(grid.horizon_s, 3.0 * orbital_period(earth.radius_km + layer.altitude_km, earth));
      const VisibilityStats vis = visibility_period(constellation, li, cfg.min_elevation_deg, grid, earth);
      out.push_back({"visibility_period_mean." + layer.layer_id, vis.mean_period_s, "s"});
      out.push_back({"handover_rate." + layer.layer_id, handover_rate(n, vis.mean_period_s), "UE/s"});
    }
    if (wants(cfg, kFamilyCoverage)) {
      std::vector<SatelliteState> members;
      for (const SatelliteState& s : initial_states)
        if (s.layer_index == li) members.push_back(s);
      const CoverageEstimate cov = coverage_area(
          visibility_footprints(members, cfg.min_elevation_deg, earth), cfg.coverage_samples,
          derive_seed(cfg.seed, li), earth);
      out.push_back({"coverage_area." + layer.layer_id, cov.area_km2, "km2"});
      out.push_back({"coverage_area_se." + layer.layer_id, cov.standard_error_km2, "km2"});
      out.push_back({"coverage_area_per_satellite." + layer.layer_id,
                     footprint_area(layer.altitude_km, cfg.min_elevation_deg, earth), "km2"});
    }
  }
  return result;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, const SweepSpec& sweep,
                                 std::size_t index) {
  if (index >= sweep.values.size())
    throw Error(ErrorCode::kInvalidArgument, "sweep index out of range");
  ScenarioConfig out = cfg;
  out.sweep.reset();
  const std::string& value = sweep.values[index];
  switch (sweep.param) {
    case SweepParam::kNUes:
      out.n_ues = parse_count(value, "sweep.values");
      break;
    case SweepParam::kActiveFraction:
      out.active_fraction = parse_number(value, "sweep.values");
      break;
    case SweepParam::kAltitude: {
      const double h = parse_number(value, "sweep.values");
      for (auto& layer : out.layers) {
        if (layer.orbit_class == OrbitClass::kMeo) continue;
        layer.altitude_km = h;
        if (!sweep.cell_radius_km.empty()) layer.cell_radius_km = sweep.cell_radius_km[index];
      }
      break;
    }
    case SweepParam::kPolicy:
      try {
        out.policy = association_policy_from_string(value);
      } catch (const Error& e) {
        throw ValidationError("sweep.values", e.what());
      }
      break;
  }
  return out;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& cfg, const SweepSpec& spec,
                              const EarthModel& earth) {
  if (spec.values.empty()) throw ValidationError("sweep.values", "must not be empty");
  std::vector<SweepPoint> out;
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    RunOptions options;
    options.sweep_index = i;
    out.push_back({spec.values[i], run_scenario(apply_sweep_value(cfg, spec, i), options, earth).report});
  }
  return out;
}

}  // namespace orbnet
