#include "orbnet/association.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "orbnet/error.hpp"
#include "orbnet/random.hpp"
#include "parallel.hpp"

namespace orbnet {

namespace {

// Relative margin a move must beat so rounding noise cannot cause cycling.
constexpr double kImprovementMargin = 1e-12;

std::uint64_t beam_key(std::uint32_t satellite_id, std::uint32_t beam_id) {
  return (static_cast<std::uint64_t>(satellite_id) << 32) | beam_id;
}

std::uint64_t beam_key(const Candidate& c) { return beam_key(c.satellite_id, c.beam_id); }

// Lexicographic preference used for every tie: lowest satellite, then beam.
bool precedes(const Candidate& a, const Candidate& b) {
  return a.satellite_id != b.satellite_id ? a.satellite_id < b.satellite_id : a.beam_id < b.beam_id;
}

}  // namespace

std::string_view to_string(AssociationPolicy p) {
  return p == AssociationPolicy::kBestSnr ? "best_snr" : "load_balancing";
}

AssociationPolicy association_policy_from_string(std::string_view s) {
  if (s == "best_snr") return AssociationPolicy::kBestSnr;
  if (s == "load_balancing") return AssociationPolicy::kLoadBalancing;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown association policy '" + std::string(s) +
                  "' (expected best_snr or load_balancing)");
}

std::string_view to_string(BeamMembership m) {
  return m == BeamMembership::kStrict ? "strict" : "nearest";
}

BeamMembership beam_membership_from_string(std::string_view s) {
  if (s == "strict") return BeamMembership::kStrict;
  if (s == "nearest") return BeamMembership::kNearest;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown beam membership '" + std::string(s) + "' (expected strict or nearest)");
}

UeSite make_ue(std::uint32_t ue_id, const GeodeticPosition& position, const EarthModel& earth) {
  validate(position);
  return {ue_id, position, geodetic_to_ecef(position, earth)};
}

BeamGrid::BeamGrid(const std::vector<SatelliteState>& satellites, const Constellation& constellation,
                   const EarthModel& earth) {
  offsets_.reserve(satellites.size() + 1);
  offsets_.push_back(0);
  std::vector<std::vector<BeamOffset>> layouts;
  for (const auto& layer : constellation.layers)
    layouts.push_back(beam_layout(layer.beams_per_satellite, layer.cell_radius_km));

  for (const SatelliteState& sat : satellites) {
    const GeodeticPosition nadir{sat.position.latitude_deg, sat.position.longitude_deg, 0.0};
    for (const BeamOffset& o : layouts.at(sat.layer_index)) {
      const double dist = std::hypot(o.east_km, o.north_km);
      const GeodeticPosition centre =
          dist == 0.0 ? nadir
                      : destination_point(nadir, rad_to_deg(std::atan2(o.east_km, o.north_km)),
                                          dist, earth);
      centres_.push_back(geodetic_to_ecef(centre, earth).unit());
    }
    offsets_.push_back(centres_.size());
  }
}

std::pair<std::uint32_t, double> BeamGrid::nearest_beam(std::size_t index,
                                                        const EcefVector& ue_unit) const {
  std::uint32_t best = 0;
  double best_cos = -2.0;
  for (std::size_t k = offsets_[index]; k < offsets_[index + 1]; ++k) {
    const double c = centres_[k].dot(ue_unit);
    if (c > best_cos) {
      best_cos = c;
      best = static_cast<std::uint32_t>(k - offsets_[index]);
    }
  }
  return {best, best_cos};
}

std::vector<std::vector<Candidate>> candidate_links(const std::vector<UeSite>& ues,
                                                    const std::vector<SatelliteState>& satellites,
                                                    const LinkContext& ctx) {
  if (ctx.constellation == nullptr)
    throw Error(ErrorCode::kInvalidArgument, "link context has no constellation");
  const Constellation& constellation = *ctx.constellation;
  if (ctx.radio_by_layer.size() != constellation.layers.size())
    throw Error(ErrorCode::kInvalidArgument, "radio parameters must be given for every layer");

  std::vector<std::size_t> order(satellites.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return satellites[a].satellite_id < satellites[b].satellite_id;
  });

  const BeamGrid beams(satellites, constellation, ctx.earth);
  std::vector<double> beam_cos(constellation.layers.size());
  for (std::size_t li = 0; li < beam_cos.size(); ++li)
    beam_cos[li] = std::cos(constellation.layers[li].beam_radius_km() / ctx.earth.radius_km);
  const double sin_mask = std::sin(deg_to_rad(ctx.min_elevation_deg));

  std::vector<std::vector<Candidate>> out(ues.size());
  detail::parallel_for(ues.size(), [&](std::size_t u) {
    const UeSite& ue = ues[u];
    const EcefVector up = ue.ecef.unit();
    for (const std::size_t si : order) {
      const SatelliteState& sat = satellites[si];
      const EcefVector los = sat.ecef - ue.ecef;
      const double range = los.norm();
      // Same inclusive test as is_visible, done on sines to skip the asin.
      if (los.dot(up) < sin_mask * range) continue;
      const auto [beam_id, cos_angle] = beams.nearest_beam(si, up);
      const bool in_beam = cos_angle >= beam_cos[sat.layer_index];
      if (ctx.membership == BeamMembership::kStrict && !in_beam) continue;

      const std::optional<double> shadow =
          ctx.loss.shadowing_enabled
              ? std::optional<double>(shadowing_draw(ctx.shadowing_seed, ue.ue_id, sat.satellite_id))
              : std::nullopt;
      const LinkState link = evaluate_link(ue.ue_id, ue.ecef, sat.ecef, sat.satellite_id, beam_id,
                                           in_beam, ctx.radio_by_layer[sat.layer_index], ctx.loss,
                                           shadow);
      out[u].push_back({sat.satellite_id, beam_id, in_beam, link.slant_range_km, link.elevation_deg,
                        link.path_loss_db, link.snr_db, link.capacity_bps});
    }
  });
  return out;
}

std::size_t AssociationMap::served_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.has_value(); }));
}

std::vector<int> AssociationMap::beam_occupancy() const {
  std::unordered_map<std::uint64_t, int> count;
  for (const auto& e : entries)
    if (e) ++count[beam_key(e->link)];
  std::vector<int> out(entries.size(), 0);
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i]) out[i] = count[beam_key(entries[i]->link)];
  return out;
}

std::vector<double> AssociationMap::per_ue_capacity() const {
  const auto occ = beam_occupancy();
  std::vector<double> out(entries.size(), 0.0);
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i]) out[i] = entries[i]->link.capacity_bps / occ[i];
  return out;
}

AssociationMap associate_best_snr(const std::vector<UeSite>& ues,
                                  const std::vector<std::vector<Candidate>>& candidates,
                                  double min_elevation_deg) {
  if (candidates.size() != ues.size())
    throw Error(ErrorCode::kInvalidArgument, "one candidate list per UE is required");
  AssociationMap map;
  map.policy = AssociationPolicy::kBestSnr;
  map.min_elevation_deg = min_elevation_deg;
  map.ue_ids.reserve(ues.size());
  map.entries.resize(ues.size());
  for (std::size_t u = 0; u < ues.size(); ++u) {
    map.ue_ids.push_back(ues[u].ue_id);
    const auto& list = candidates[u];
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (!best || list[k].snr_db > list[*best].snr_db ||
          (list[k].snr_db == list[*best].snr_db && precedes(list[k], list[*best])))
        best = k;
    }
    if (best) map.entries[u] = Assignment{*best, list[*best]};
  }
  return map;
}

AssociationMap associate_load_balancing(const std::vector<UeSite>& ues,
                                        const std::vector<std::vector<Candidate>>& candidates,
                                        double min_elevation_deg, std::uint64_t seed,
                                        int max_rounds) {
  if (max_rounds < 1) throw Error(ErrorCode::kInvalidArgument, "max_rounds must be >= 1");
  AssociationMap map = associate_best_snr(ues, candidates, min_elevation_deg);
  map.policy = AssociationPolicy::kLoadBalancing;
  map.converged = false;

  std::unordered_map<std::uint64_t, int> occupancy;
  for (const auto& e : map.entries)
    if (e) ++occupancy[beam_key(e->link)];

  const std::uint64_t order_seed = stream_seed(seed, SeedStream::kAssociationOrder);
  for (int round = 0; round < max_rounds; ++round) {
    map.rounds = round + 1;
    std::size_t moves = 0;
    for (const std::uint32_t u : seeded_permutation(ues.size(), derive_seed(order_seed, round))) {
      auto& entry = map.entries[u];
      if (!entry) continue;
      const auto& list = candidates[u];
      const std::uint64_t current_key = beam_key(entry->link);
      const double current_rate = entry->link.capacity_bps / occupancy[current_key];

      std::optional<std::size_t> best;
      double best_rate = current_rate;
      for (std::size_t k = 0; k < list.size(); ++k) {
        const std::uint64_t key = beam_key(list[k]);
        if (key == current_key) continue;
        const auto it = occupancy.find(key);
        const double rate = list[k].capacity_bps / ((it == occupancy.end() ? 0 : it->second) + 1);
        if (rate > best_rate * (1.0 + kImprovementMargin) ||
            (best && rate == best_rate && precedes(list[k], list[*best]))) {
          best = k;
          best_rate = rate;
        }
      }
      if (!best) continue;
      if (--occupancy[current_key] == 0) occupancy.erase(current_key);
      ++occupancy[beam_key(list[*best])];
      entry = Assignment{*best, list[*best]};
      ++moves;
    }
    if (moves == 0) {
      map.converged = true;
      break;
    }
  }
  return map;
}

AssociationMap associate(AssociationPolicy policy, const std::vector<UeSite>& ues,
                         const std::vector<SatelliteState>& satellites, const LinkContext& ctx,
                         std::uint64_t seed, int max_rounds) {
  const auto candidates = candidate_links(ues, satellites, ctx);
  if (policy == AssociationPolicy::kBestSnr)
    return associate_best_snr(ues, candidates, ctx.min_elevation_deg);
  return associate_load_balancing(ues, candidates, ctx.min_elevation_deg, seed, max_rounds);
}

bool is_fixed_point(const AssociationMap& map,
                    const std::vector<std::vector<Candidate>>& candidates) {
  std::unordered_map<std::uint64_t, int> occupancy;
  for (const auto& e : map.entries)
    if (e) ++occupancy[beam_key(e->link)];
  for (std::size_t u = 0; u < map.entries.size(); ++u) {
    const auto& entry = map.entries[u];
    if (!entry) {
      if (!candidates[u].empty()) return false;
      continue;
    }
    const std::uint64_t current_key = beam_key(entry->link);
    const double current_rate = entry->link.capacity_bps / occupancy[current_key];
    for (const Candidate& c : candidates[u]) {
      const std::uint64_t key = beam_key(c);
      if (key == current_key) continue;
      const auto it = occupancy.find(key);
      const double rate = c.capacity_bps / ((it == occupancy.end() ? 0 : it->second) + 1);
      if (rate > current_rate * (1.0 + kImprovementMargin)) return false;
    }
  }
  return true;
}

}  // namespace orbnet
