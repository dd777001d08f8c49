#include <doctest.h>

#include <cmath>
#include <map>

#include "orbnet/association.hpp"
#include "orbnet/constellation.hpp"
#include "orbnet/error.hpp"
#include "orbnet/random.hpp"

using namespace orbnet;

namespace {

Candidate cand(std::uint32_t sat, std::uint32_t beam, double snr, double cap) {
  Candidate c;
  c.satellite_id = sat;
  c.beam_id = beam;
  c.in_beam = true;
  c.snr_db = snr;
  c.capacity_bps = cap;
  c.elevation_deg = 45;
  c.slant_range_km = 800;
  return c;
}

std::vector<UeSite> sites(std::size_t n) {
  std::vector<UeSite> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(make_ue(static_cast<std::uint32_t>(i), {0, 0, 0}));
  return out;
}

// Per-UE capacities recomputed from scratch: link capacity over the number of
// UEs on the same (satellite, beam).
std::vector<double> brute_rates(const AssociationMap& m) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> load;
  for (const auto& e : m.entries)
    if (e) ++load[{e->link.satellite_id, e->link.beam_id}];
  std::vector<double> out;
  for (const auto& e : m.entries)
    out.push_back(e ? e->link.capacity_bps / load[{e->link.satellite_id, e->link.beam_id}] : 0.0);
  return out;
}

}  // namespace

TEST_CASE("policy and membership names") {
  CHECK(to_string(AssociationPolicy::kLoadBalancing) == "load_balancing");
  CHECK(association_policy_from_string("best_snr") == AssociationPolicy::kBestSnr);
  CHECK(beam_membership_from_string("strict") == BeamMembership::kStrict);
  CHECK(to_string(BeamMembership::kNearest) == "nearest");
  CHECK_THROWS_AS(association_policy_from_string("random"), Error);
}

TEST_CASE("best SNR picks the maximum and breaks ties by id") {
  const auto ues = sites(3);
  std::vector<std::vector<Candidate>> c = {
      {cand(1, 0, 10, 1e8), cand(2, 0, 12, 2e8)},
      {cand(1, 3, 12, 1e8), cand(2, 1, 12, 2e8)},
      {},
  };
  const AssociationMap m = associate_best_snr(ues, c, 20);
  REQUIRE(m.entries[0]);
  CHECK(m.entries[0]->link.satellite_id == 2);
  CHECK(m.entries[1]->link.satellite_id == 1);
  CHECK_FALSE(m.entries[2]);
  CHECK(m.served_count() == 2);
  CHECK(m.unserved_count() == 1);
}

TEST_CASE("beam occupancy and per-UE capacity") {
  const auto ues = sites(4);
  std::vector<std::vector<Candidate>> c = {
      {cand(1, 0, 10, 3e8)}, {cand(1, 0, 10, 3e8)}, {cand(1, 1, 10, 3e8)}, {cand(2, 0, 10, 1e8)}};
  const AssociationMap m = associate_best_snr(ues, c, 20);
  CHECK(m.beam_occupancy() == std::vector<int>{2, 2, 1, 1});
  CHECK(m.per_ue_capacity() == std::vector<double>{1.5e8, 1.5e8, 3e8, 1e8});
  CHECK(m.per_ue_capacity() == brute_rates(m));
}

TEST_CASE("load balancing spreads a crowded beam") {
  const std::size_t n = 6;
  const auto ues = sites(n);
  std::vector<std::vector<Candidate>> c(n, {cand(1, 0, 20, 6e8), cand(2, 0, 15, 3e8)});
  const AssociationMap bs = associate_best_snr(ues, c, 20);
  const AssociationMap lb = associate_load_balancing(ues, c, 20, 11);
  CHECK(lb.converged);
  CHECK(is_fixed_point(lb, c));
  CHECK_FALSE(is_fixed_point(bs, c));
  // 6 UEs over capacities 6e8 and 3e8: the equilibrium puts 4 and 2 UEs there.
  int on_first = 0;
  for (const auto& e : lb.entries) on_first += e->link.satellite_id == 1;
  CHECK(on_first == 4);
  const auto rates = lb.per_ue_capacity();
  CHECK(rates == brute_rates(lb));
  double sum_bs = 0, sum_lb = 0, min_bs = 1e30, min_lb = 1e30;
  for (double r : bs.per_ue_capacity()) sum_bs += r, min_bs = std::min(min_bs, r);
  for (double r : rates) sum_lb += r, min_lb = std::min(min_lb, r);
  CHECK(sum_lb > sum_bs);
  CHECK(min_lb >= min_bs);
}

TEST_CASE("load balancing is deterministic per seed and reaches a fixed point") {
  Rng rng(5);
  const std::size_t n = 200;
  const auto ues = sites(n);
  std::vector<std::vector<Candidate>> c(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::uint32_t s = 0; s < 6; ++s)
      if (rng.uniform() < 0.6) {
        const double snr = rng.uniform(0, 25);
        c[u].push_back(cand(s, static_cast<std::uint32_t>(rng.below(3)), snr,
                            400e6 * std::log2(1 + std::pow(10, snr / 10))));
      }
  const AssociationMap a = associate_load_balancing(ues, c, 20, 99);
  const AssociationMap b = associate_load_balancing(ues, c, 20, 99);
  for (std::size_t u = 0; u < n; ++u) {
    CHECK(a.entries[u].has_value() == b.entries[u].has_value());
    if (a.entries[u]) CHECK(a.entries[u]->candidate_index == b.entries[u]->candidate_index);
    CHECK(a.entries[u].has_value() == !c[u].empty());
  }
  CHECK(a.converged);
  CHECK(is_fixed_point(a, c));
  CHECK(a.per_ue_capacity() == brute_rates(a));
}

TEST_CASE("load balancing reports non-convergence when rounds run out") {
  CHECK_THROWS_AS(associate_load_balancing(sites(1), {{cand(1, 0, 1, 1)}}, 20, 1, 0), Error);
  const std::size_t n = 50;
  const auto ues = sites(n);
  std::vector<std::vector<Candidate>> c(n, {cand(1, 0, 20, 6e8), cand(2, 0, 15, 3e8)});
  const AssociationMap m = associate_load_balancing(ues, c, 20, 1, 1);
  CHECK(m.rounds == 1);
  CHECK_FALSE(m.converged);
}

TEST_CASE("candidate links from real geometry") {
  Constellation c = build_constellation(iris2_preset());
  std::vector<SatelliteState> states;
  for (const auto& s : c.satellites) states.push_back(propagate(s, c, 0));
  LinkContext ctx;
  ctx.constellation = &c;
  const RadioParams dl{LinkDirection::kDownlink, 36.02, 21.44, 400e6, 20e9};
  ctx.radio_by_layer = {dl, dl, dl};
  ctx.loss = LossModelConfig::disabled();
  ctx.min_elevation_deg = 20;
  std::vector<UeSite> ues{make_ue(0, {48, 10, 0}), make_ue(1, {-30, 140, 0})};

  ctx.membership = BeamMembership::kNearest;
  const auto nearest = candidate_links(ues, states, ctx);
  ctx.membership = BeamMembership::kStrict;
  const auto strict = candidate_links(ues, states, ctx);
  for (std::size_t u = 0; u < ues.size(); ++u) {
    // Brute force: every satellite at or above the mask is a nearest-membership candidate.
    std::size_t visible = 0;
    for (const auto& s : states)
      if (elevation_angle(ues[u].position, s.position) >= 20) ++visible;
    CHECK(nearest[u].size() == visible);
    CHECK(strict[u].size() <= nearest[u].size());
    for (std::size_t i = 1; i < nearest[u].size(); ++i)
      CHECK(nearest[u][i - 1].satellite_id < nearest[u][i].satellite_id);
    for (const auto& k : strict[u]) CHECK(k.in_beam);
    for (const auto& k : nearest[u]) {
      CHECK(k.elevation_deg >= 20);
      CHECK(k.capacity_bps == doctest::Approx(400e6 * std::log2(1 + std::pow(10, k.snr_db / 10))));
    }
  }
}
