#pragma once

// UE-to-satellite association under the "best SNR" and "load balancing"
// policies. Each UE is served by exactly one (satellite, beam) pair; UEs with
// no eligible satellite are reported as unserved.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "orbnet/constellation.hpp"
#include "orbnet/link_budget.hpp"

namespace orbnet {

enum class AssociationPolicy { kBestSnr, kLoadBalancing };

std::string_view to_string(AssociationPolicy p);
AssociationPolicy association_policy_from_string(std::string_view s);

// Which beam of a visible satellite can serve a UE.
//   kStrict:  the nearest-boresight beam whose ground disk contains the UE;
//             a satellite with no such beam is not a candidate.
//   kNearest: the nearest-boresight beam, whether or not it contains the UE.
enum class BeamMembership { kStrict, kNearest };

std::string_view to_string(BeamMembership m);
BeamMembership beam_membership_from_string(std::string_view s);

struct UeSite {
  std::uint32_t ue_id = 0;
  GeodeticPosition position;
  EcefVector ecef;
};

UeSite make_ue(std::uint32_t ue_id, const GeodeticPosition& position, const EarthModel& earth = {});

// A servable (satellite, beam) option for one UE.
struct Candidate {
  std::uint32_t satellite_id = 0;
  std::uint32_t beam_id = 0;
  bool in_beam = false;
  double slant_range_km = 0.0;
  double elevation_deg = 0.0;
  double path_loss_db = 0.0;
  double snr_db = 0.0;
  double capacity_bps = 0.0;
};

struct LinkContext {
  const Constellation* constellation = nullptr;  // layer parameters for beams
  std::vector<RadioParams> radio_by_layer;        // indexed like constellation->layers
  LossModelConfig loss;
  double min_elevation_deg = 20.0;
  BeamMembership membership = BeamMembership::kNearest;
  std::uint64_t shadowing_seed = 0;
  EarthModel earth;
};

// Beam centres of every satellite at one instant, as unit vectors.
class BeamGrid {
 public:
  BeamGrid(const std::vector<SatelliteState>& satellites, const Constellation& constellation,
           const EarthModel& earth = {});

  // Nearest-boresight beam of satellite `index` (position in the satellite
  // vector) for `ue_unit`, with its cosine of Earth-central angle.
  std::pair<std::uint32_t, double> nearest_beam(std::size_t index, const EcefVector& ue_unit) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<EcefVector> centres_;
};

// All candidates of every UE, each list sorted by satellite id. Candidates
// are satellites at or above the elevation mask with an eligible beam.
std::vector<std::vector<Candidate>> candidate_links(const std::vector<UeSite>& ues,
                                                    const std::vector<SatelliteState>& satellites,
                                                    const LinkContext& ctx);

struct Assignment {
  std::size_t candidate_index = 0;  // into the UE's candidate list
  Candidate link;
};

struct AssociationMap {
  AssociationPolicy policy = AssociationPolicy::kBestSnr;
  double min_elevation_deg = 0.0;
  std::vector<std::uint32_t> ue_ids;
  std::vector<std::optional<Assignment>> entries;  // parallel to ue_ids
  bool converged = true;
  int rounds = 0;

  std::size_t served_count() const;
  std::size_t unserved_count() const { return entries.size() - served_count(); }
  // UEs sharing each UE's beam (0 for unserved UEs).
  std::vector<int> beam_occupancy() const;
  // Link capacity divided by beam occupancy; 0 for unserved UEs.
  std::vector<double> per_ue_capacity() const;
};

AssociationMap associate_best_snr(const std::vector<UeSite>& ues,
                                  const std::vector<std::vector<Candidate>>& candidates,
                                  double min_elevation_deg);

// Sequential best response from the best-SNR start: UEs are visited in a
// seeded random order each round and move to the candidate maximising
// capacity / (occupants after joining). Stops at a fixed point or after
// `max_rounds` rounds (converged = false).
AssociationMap associate_load_balancing(const std::vector<UeSite>& ues,
                                        const std::vector<std::vector<Candidate>>& candidates,
                                        double min_elevation_deg, std::uint64_t seed,
                                        int max_rounds = 20);

AssociationMap associate(AssociationPolicy policy, const std::vector<UeSite>& ues,
                         const std::vector<SatelliteState>& satellites, const LinkContext& ctx,
                         std::uint64_t seed, int max_rounds = 20);

// True when no UE can strictly raise its own per-UE capacity by moving alone.
bool is_fixed_point(const AssociationMap& map,
                    const std::vector<std::vector<Candidate>>& candidates);

}  // namespace orbnet
