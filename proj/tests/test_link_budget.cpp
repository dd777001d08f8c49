#include <doctest.h>

#include <cmath>

#include "orbnet/error.hpp"
#include "orbnet/geometry.hpp"
#include "orbnet/link_budget.hpp"

using namespace orbnet;

TEST_CASE("free-space path loss") {
  // 20 log10(4 pi d f / c) for 600 km at 20 GHz.
  CHECK(free_space_path_loss(600, 20e9) == doctest::Approx(174.0314).epsilon(1e-6));
  CHECK(free_space_path_loss(1200, 20e9) - free_space_path_loss(600, 20e9) ==
        doctest::Approx(20 * std::log10(2.0)));
  CHECK_THROWS_AS(free_space_path_loss(0, 20e9), Error);
  CHECK_THROWS_AS(free_space_path_loss(600, -1), Error);
}

TEST_CASE("SNR and Shannon capacity") {
  RadioParams dl{LinkDirection::kDownlink, 36.02, 21.44, 400e6, 20e9};
  CHECK(snr_from_path_loss(174.03, dl) == doctest::Approx(26.0104).epsilon(1e-5));
  CHECK(shannon_capacity(0, 400e6) == 400e6);
  CHECK(shannon_capacity(10 * std::log10(3.0), 1e6) == doctest::Approx(2e6));
  double prev = 0;
  for (double s = -10; s <= 30; s += 1) {
    const double c = shannon_capacity(s, 1e6);
    CHECK(c > prev);
    prev = c;
  }
  for (int i = 0; i < 10; ++i) {
    const double x = 0.5 + i;
    const double h = 1e-3;
    auto cap_lin = [](double lin) { return shannon_capacity(10 * std::log10(lin), 1e6); };
    CHECK(cap_lin(x + h) - 2 * cap_lin(x) + cap_lin(x - h) < 0);
  }
}

TEST_CASE("SNR decreases with slant range without shadowing") {
  RadioParams dl{LinkDirection::kDownlink, 36.02, 21.44, 400e6, 20e9};
  const LossModelConfig cfg;
  double prev = 1e9;
  for (double d = 400; d < 3000; d += 100) {
    const double s = snr(d, 45, dl, cfg);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("excess losses") {
  LossModelConfig cfg = LossModelConfig::disabled();
  CHECK(excess_losses(30, 20e9, cfg) == 0.0);
  cfg.rain_enabled = true;
  cfg.rain_margin_db = 1.5;
  CHECK(excess_losses(30, 20e9, cfg) == 1.5);
  cfg.shadowing_enabled = true;
  cfg.shadowing_sigma_db = 2;
  CHECK(excess_losses(30, 20e9, cfg, 0.5) == doctest::Approx(2.5));
  CHECK(excess_losses(30, 20e9, cfg, -3.0) == 0.0);
  const LossModelConfig def;
  CHECK(excess_losses(90, 20e9, def) < excess_losses(20, 20e9, def));
  try {
    excess_losses(95, 20e9, def);
    FAIL("expected ElevationOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kElevationOutOfRange);
  }
}

TEST_CASE("loss tables") {
  const LossTable t = LossTable::parse(
      "elevation_deg,frequency_GHz,loss_dB\n"
      "# comment\n"
      "10 20 2.0\n90,20,1.0\n10,30,4.0\n90,30,2.0\n");
  CHECK(t.lookup(10, 20) == 2.0);
  CHECK(t.lookup(50, 20) == doctest::Approx(1.5));
  CHECK(t.lookup(50, 25) == doctest::Approx(2.25));
  CHECK(t.lookup(0, 10) == 2.0);
  CHECK(t.lookup(90, 40) == 2.0);
  CHECK(LossTable::parse(t.to_text()) == t);
  CHECK_THROWS_AS(LossTable({{10, 20, 1.0}, {90, 20, 2.0}}), Error);
  CHECK_THROWS_AS(LossTable({{10, 20, -1.0}, {90, 20, -2.0}}), Error);
}

TEST_CASE("bundled data files match the embedded tables") {
  CHECK(LossTable::load(ORBNET_DATA_DIR "/atmospheric.csv") == default_atmospheric_table());
  CHECK(LossTable::load(ORBNET_DATA_DIR "/scintillation.csv") == default_scintillation_table());
}

TEST_CASE("shadowing draws are frozen per pair") {
  CHECK(shadowing_draw(1, 2, 3) == shadowing_draw(1, 2, 3));
  CHECK(shadowing_draw(1, 2, 3) != shadowing_draw(1, 3, 2));
}

TEST_CASE("evaluate_link composes the budget") {
  RadioParams dl{LinkDirection::kDownlink, 36.02, 21.44, 400e6, 20e9};
  const LossModelConfig off = LossModelConfig::disabled();
  const EcefVector ue = geodetic_to_ecef({0, 0, 0});
  const EcefVector sat = geodetic_to_ecef({0, 0, 600});
  const LinkState l = evaluate_link(4, ue, sat, 9, 2, true, dl, off);
  CHECK(l.ue_id == 4);
  CHECK(l.satellite_id == 9);
  CHECK(l.beam_id == 2);
  CHECK(l.slant_range_km == doctest::Approx(600));
  CHECK(l.elevation_deg == doctest::Approx(90));
  CHECK(l.path_loss_db == doctest::Approx(174.0314).epsilon(1e-6));
  CHECK(l.snr_db == doctest::Approx(26.0104 - 0.0014).epsilon(1e-4));
  CHECK(l.capacity_bps == doctest::Approx(400e6 * std::log2(1 + std::pow(10, l.snr_db / 10))));
  try {
    evaluate_link(0, ue, geodetic_to_ecef({0, 180, 600}), 1, 0, true, dl, off);
    FAIL("expected NotVisible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotVisible);
  }
}
