#pragma once

// Large-scale link budget: free-space loss plus table-driven excess losses,
// SNR from EIRP and G/T, and Shannon capacity.
//
// Antenna patterns are folded into the EIRP and G/T figures (boresight
// alignment within a beam), and small-scale fading is not modelled.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbnet/geometry.hpp"

namespace orbnet {

// -10 log10(k_B) with k_B in W/Hz/K.
inline constexpr double kBoltzmannDb = 228.601;

enum class LinkDirection { kDownlink, kUplink };

std::string_view to_string(LinkDirection d);
LinkDirection link_direction_from_string(std::string_view s);

struct RadioParams {
  LinkDirection direction = LinkDirection::kDownlink;
  double eirp_dbw = 0.0;
  double g_over_t_db_k = 0.0;
  double bandwidth_hz = 400e6;
  double carrier_frequency_hz = 20e9;

  bool operator==(const RadioParams&) const = default;
};

void validate(const RadioParams& radio);

enum class Environment { kUrban, kSuburban, kRural, kMaritime };

std::string_view to_string(Environment e);
Environment environment_from_string(std::string_view s);

// Loss in dB tabulated on an (elevation, frequency) grid and interpolated
// bilinearly, clamping outside the grid. Text form: one header row, then
// "elevation_deg,frequency_GHz,loss_dB" rows; '#' starts a comment and
// whitespace may replace the commas.
class LossTable {
 public:
  struct Row {
    double elevation_deg;
    double frequency_ghz;
    double loss_db;
    bool operator==(const Row&) const = default;
  };

  LossTable() = default;
  // Rows may arrive in any order; every frequency must cover the same
  // elevations. Throws Error(kInvalidArgument) for negative losses or losses
  // that grow with elevation.
  explicit LossTable(std::vector<Row> rows);

  static LossTable parse(std::string_view text);
  static LossTable load(const std::string& path);

  bool empty() const { return rows_.empty(); }
  const std::vector<Row>& rows() const { return rows_; }
  double lookup(double elevation_deg, double frequency_ghz) const;
  std::string to_text() const;

  bool operator==(const LossTable& o) const { return rows_ == o.rows_; }

 private:
  double lookup_at(std::size_t freq_index, double elevation_deg) const;

  std::vector<Row> rows_;          // sorted by (frequency, elevation)
  std::vector<double> frequencies_;
  std::vector<double> elevations_;
};

// Bundled gaseous-absorption and tropospheric-scintillation tables.
const LossTable& default_atmospheric_table();
const LossTable& default_scintillation_table();

// Typical line-of-sight shadow-fading spread for an environment, dB.
double default_shadowing_sigma(Environment e);

struct LossModelConfig {
  Environment environment = Environment::kSuburban;
  LossTable atmospheric = default_atmospheric_table();
  LossTable scintillation = default_scintillation_table();
  double rain_margin_db = 1.0;
  double shadowing_sigma_db = default_shadowing_sigma(Environment::kSuburban);
  bool atmospheric_enabled = true;
  bool rain_enabled = true;
  bool scintillation_enabled = true;
  bool shadowing_enabled = true;

  // Free-space loss only.
  static LossModelConfig disabled();

  bool operator==(const LossModelConfig&) const = default;
};

double free_space_path_loss(double distance_km, double frequency_hz);

// Sum of the enabled excess-loss terms. `shadowing_draw` is a standard normal
// variate scaled by shadowing_sigma_db; absent means no shadowing this call.
// The total is floored at 0 dB.
double excess_losses(double elevation_deg, double frequency_hz, const LossModelConfig& cfg,
                     std::optional<double> shadowing_draw = std::nullopt);

// Shadowing variate for a (UE, satellite) pair, frozen for a run.
double shadowing_draw(std::uint64_t seed, std::uint64_t ue_key, std::uint64_t satellite_id);

double snr_from_path_loss(double path_loss_db, const RadioParams& radio);

double snr(double slant_range_km, double elevation_deg, const RadioParams& radio,
           const LossModelConfig& cfg, std::optional<double> shadowing_draw = std::nullopt);

double shannon_capacity(double snr_db, double bandwidth_hz);

struct LinkState {
  std::uint32_t ue_id = 0;
  std::uint32_t satellite_id = 0;
  std::uint32_t beam_id = 0;
  bool in_beam = false;
  double slant_range_km = 0.0;
  double elevation_deg = 0.0;
  double free_space_loss_db = 0.0;
  double path_loss_db = 0.0;
  double snr_db = 0.0;
  double bandwidth_hz = 0.0;
  double capacity_bps = 0.0;
};

// Composes the above for one UE/satellite pair. Throws NotVisible when the
// satellite is below the UE's horizon. Beam membership is recorded, not
// enforced.
LinkState evaluate_link(std::uint32_t ue_id, const EcefVector& ue, const EcefVector& sat,
                        std::uint32_t satellite_id, std::uint32_t beam_id, bool in_beam,
                        const RadioParams& radio, const LossModelConfig& cfg,
                        std::optional<double> shadowing_draw = std::nullopt);

}  // namespace orbnet
