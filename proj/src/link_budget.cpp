#include "orbnet/link_budget.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "orbnet/error.hpp"
#include "orbnet/random.hpp"

namespace orbnet {

std::string_view to_string(LinkDirection d) {
  return d == LinkDirection::kDownlink ? "downlink" : "uplink";
}

LinkDirection link_direction_from_string(std::string_view s) {
  if (s == "downlink") return LinkDirection::kDownlink;
  if (s == "uplink") return LinkDirection::kUplink;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown link direction '" + std::string(s) + "' (expected downlink or uplink)");
}

std::string_view to_string(Environment e) {
  switch (e) {
    case Environment::kUrban: return "urban";
    case Environment::kSuburban: return "suburban";
    case Environment::kRural: return "rural";
    case Environment::kMaritime: return "maritime";
  }
  return "suburban";
}

Environment environment_from_string(std::string_view s) {
  if (s == "urban") return Environment::kUrban;
  if (s == "suburban") return Environment::kSuburban;
  if (s == "rural") return Environment::kRural;
  if (s == "maritime") return Environment::kMaritime;
  throw Error(ErrorCode::kInvalidArgument, "unknown environment '" + std::string(s) + "'");
}

double default_shadowing_sigma(Environment e) {
  switch (e) {
    case Environment::kUrban: return 3.0;
    case Environment::kSuburban: return 1.2;
    case Environment::kRural: return 1.0;
    case Environment::kMaritime: return 0.5;
  }
  return 1.2;
}

void validate(const RadioParams& radio) {
  if (!(radio.bandwidth_hz > 0.0))
    throw Error(ErrorCode::kNonPositiveInput, "bandwidth must be positive");
  if (!(radio.carrier_frequency_hz > 0.0))
    throw Error(ErrorCode::kNonPositiveInput, "carrier frequency must be positive");
}

LossTable::LossTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) {
    return std::tie(a.frequency_ghz, a.elevation_deg) < std::tie(b.frequency_ghz, b.elevation_deg);
  });
  std::map<double, std::vector<double>> grid;
  for (const Row& r : rows_) {
    if (!(r.loss_db >= 0.0))
      throw Error(ErrorCode::kInvalidArgument, "loss table entries must be >= 0 dB");
    if (!(r.frequency_ghz > 0.0))
      throw Error(ErrorCode::kInvalidArgument, "loss table frequencies must be positive");
    grid[r.frequency_ghz].push_back(r.elevation_deg);
  }
  for (const auto& [f, els] : grid) {
    frequencies_.push_back(f);
    if (elevations_.empty()) elevations_ = els;
    else if (els != elevations_)
      throw Error(ErrorCode::kInvalidArgument,
                  "loss table frequencies must share one elevation grid");
  }
  if (std::adjacent_find(elevations_.begin(), elevations_.end()) != elevations_.end())
    throw Error(ErrorCode::kInvalidArgument, "duplicate elevation in loss table");
  const std::size_t ne = elevations_.size();
  for (std::size_t fi = 0; fi < frequencies_.size(); ++fi)
    for (std::size_t ei = 1; ei < ne; ++ei)
      if (rows_[fi * ne + ei].loss_db > rows_[fi * ne + ei - 1].loss_db)
        throw Error(ErrorCode::kInvalidArgument,
                    "loss table must be non-increasing in elevation");
}

LossTable LossTable::parse(std::string_view text) {
  std::vector<Row> rows;
  bool header_seen = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    if (tok.size() != 3)
      throw LineError(ErrorCode::kParse, line_no, "expected elevation, frequency, loss");
    try {
      rows.push_back({std::stod(tok[0]), std::stod(tok[1]), std::stod(tok[2])});
    } catch (const std::exception&) {
      throw LineError(ErrorCode::kParse, line_no, "non-numeric loss table field");
    }
  }
  return LossTable(std::move(rows));
}

LossTable LossTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open loss table: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string LossTable::to_text() const {
  std::ostringstream out;
  out << "elevation_deg,frequency_GHz,loss_dB\n";
  out << std::setprecision(10);
  for (const Row& r : rows_) out << r.elevation_deg << ',' << r.frequency_ghz << ',' << r.loss_db << '\n';
  return out.str();
}

double LossTable::lookup_at(std::size_t freq_index, double elevation_deg) const {
  const std::size_t ne = elevations_.size();
  const Row* row = rows_.data() + freq_index * ne;
  if (elevation_deg <= elevations_.front()) return row[0].loss_db;
  if (elevation_deg >= elevations_.back()) return row[ne - 1].loss_db;
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(elevations_.begin(), elevations_.end(), elevation_deg) - elevations_.begin());
  const std::size_t lo = hi - 1;
  const double w = (elevation_deg - elevations_[lo]) / (elevations_[hi] - elevations_[lo]);
  return row[lo].loss_db + w * (row[hi].loss_db - row[lo].loss_db);
}

double LossTable::lookup(double elevation_deg, double frequency_ghz) const {
  if (rows_.empty()) return 0.0;
  if (frequency_ghz <= frequencies_.front()) return lookup_at(0, elevation_deg);
  if (frequency_ghz >= frequencies_.back()) return lookup_at(frequencies_.size() - 1, elevation_deg);
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(frequencies_.begin(), frequencies_.end(), frequency_ghz) - frequencies_.begin());
  const std::size_t lo = hi - 1;
  const double w = (frequency_ghz - frequencies_[lo]) / (frequencies_[hi] - frequencies_[lo]);
  const double a = lookup_at(lo, elevation_deg);
  return a + w * (lookup_at(hi, elevation_deg) - a);
}

LossModelConfig LossModelConfig::disabled() {
  LossModelConfig cfg;
  cfg.atmospheric_enabled = false;
  cfg.rain_enabled = false;
  cfg.scintillation_enabled = false;
  cfg.shadowing_enabled = false;
  return cfg;
}

double free_space_path_loss(double distance_km, double frequency_hz) {
  if (!(distance_km > 0.0) || !(frequency_hz > 0.0))
    throw Error(ErrorCode::kNonPositiveInput, "distance and frequency must be positive");
  const double distance_m = distance_km * 1000.0;
  const double c_m_s = kSpeedOfLightKmPerS * 1000.0;
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / c_m_s);
}

double excess_losses(double elevation_deg, double frequency_hz, const LossModelConfig& cfg,
                     std::optional<double> shadowing_draw) {
  if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0))
    throw Error(ErrorCode::kElevationOutOfRange,
                "elevation must lie in [0, 90]: " + std::to_string(elevation_deg));
  const double f_ghz = frequency_hz / 1e9;
  double total = 0.0;
  if (cfg.atmospheric_enabled) total += cfg.atmospheric.lookup(elevation_deg, f_ghz);
  if (cfg.rain_enabled) total += cfg.rain_margin_db;
  if (cfg.scintillation_enabled) total += cfg.scintillation.lookup(elevation_deg, f_ghz);
  if (cfg.shadowing_enabled && shadowing_draw) total += cfg.shadowing_sigma_db * *shadowing_draw;
  return std::max(0.0, total);
}

double shadowing_draw(std::uint64_t seed, std::uint64_t ue_key, std::uint64_t satellite_id) {
  return keyed_normal(derive_seed(stream_seed(seed, SeedStream::kShadowing), ue_key, satellite_id));
}

double snr_from_path_loss(double path_loss_db, const RadioParams& radio) {
  return radio.eirp_dbw + radio.g_over_t_db_k - path_loss_db + kBoltzmannDb -
         10.0 * std::log10(radio.bandwidth_hz);
}

double snr(double slant_range_km, double elevation_deg, const RadioParams& radio,
           const LossModelConfig& cfg, std::optional<double> shadowing_draw) {
  const double pl = free_space_path_loss(slant_range_km, radio.carrier_frequency_hz) +
                    excess_losses(elevation_deg, radio.carrier_frequency_hz, cfg, shadowing_draw);
  return snr_from_path_loss(pl, radio);
}

double shannon_capacity(double snr_db, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw Error(ErrorCode::kNonPositiveInput, "bandwidth must be positive");
  if (snr_db == -std::numeric_limits<double>::infinity()) return 0.0;
  return bandwidth_hz * std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
}

LinkState evaluate_link(std::uint32_t ue_id, const EcefVector& ue, const EcefVector& sat,
                        std::uint32_t satellite_id, std::uint32_t beam_id, bool in_beam,
                        const RadioParams& radio, const LossModelConfig& cfg,
                        std::optional<double> shadowing_draw) {
  const double elevation = elevation_angle(ue, sat);
  if (elevation < 0.0)
    throw Error(ErrorCode::kNotVisible,
                "satellite " + std::to_string(satellite_id) + " is below the horizon of UE " +
                    std::to_string(ue_id));
  LinkState s;
  s.ue_id = ue_id;
  s.satellite_id = satellite_id;
  s.beam_id = beam_id;
  s.in_beam = in_beam;
  s.slant_range_km = (sat - ue).norm();
  s.elevation_deg = elevation;
  s.free_space_loss_db = free_space_path_loss(s.slant_range_km, radio.carrier_frequency_hz);
  s.path_loss_db = s.free_space_loss_db +
                   excess_losses(elevation, radio.carrier_frequency_hz, cfg, shadowing_draw);
  s.snr_db = snr_from_path_loss(s.path_loss_db, radio);
  s.bandwidth_hz = radio.bandwidth_hz;
  s.capacity_bps = shannon_capacity(s.snr_db, radio.bandwidth_hz);
  return s;
}

}  // namespace orbnet
