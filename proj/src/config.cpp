#include "orbnet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "orbnet/error.hpp"

namespace orbnet {

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  bool used = false;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;

  Entry* find(std::string_view key) {
    for (Entry& e : entries)
      if (e.key == key) {
        e.used = true;
        return &e;
      }
    return nullptr;
  }
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (out.size() == 1 && out.front().empty()) out.clear();
  return out;
}

std::vector<Section> tokenize(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw LineError(ErrorCode::kParse, line_no, "malformed section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      for (const Section& s : sections)
        if (s.name == name)
          throw LineError(ErrorCode::kParse, line_no, "duplicate section [" + name + "]");
      sections.push_back({name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw LineError(ErrorCode::kParse, line_no, "expected key = value");
    if (sections.empty()) throw LineError(ErrorCode::kParse, line_no, "key outside any section");
    Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no, false};
    if (e.key.empty()) throw LineError(ErrorCode::kParse, line_no, "empty key");
    for (const Entry& prev : sections.back().entries)
      if (prev.key == e.key) throw LineError(ErrorCode::kParse, line_no, "duplicate key '" + e.key + "'");
    sections.back().entries.push_back(std::move(e));
  }
  return sections;
}

class Reader {
 public:
  Reader(Section& section, std::string prefix) : section_(section), prefix_(std::move(prefix)) {}

  std::string path(std::string_view key) const { return prefix_ + "." + std::string(key); }

  const std::string* text(std::string_view key) {
    const Entry* e = section_.find(key);
    return e ? &e->value : nullptr;
  }

  template <typename T>
  void number(std::string_view key, T& out) {
    if (const std::string* v = text(key)) out = parse<T>(*v, path(key));
  }

  template <typename T>
  void optional_number(std::string_view key, std::optional<T>& out) {
    if (const std::string* v = text(key)) {
      if (*v == "none") out.reset();
      else out = parse<T>(*v, path(key));
    }
  }

  void boolean(std::string_view key, bool& out) {
    if (const std::string* v = text(key)) {
      if (*v == "true") out = true;
      else if (*v == "false") out = false;
      else throw ValidationError(path(key), "expected true or false");
    }
  }

  void string(std::string_view key, std::string& out) {
    if (const std::string* v = text(key)) out = *v;
  }

  void numbers(std::string_view key, std::vector<double>& out) {
    if (const std::string* v = text(key)) {
      out.clear();
      for (const std::string& item : split_list(*v)) out.push_back(parse<double>(item, path(key)));
    }
  }

  template <typename Enum, typename Fn>
  void enumeration(std::string_view key, Enum& out, Fn from_string) {
    if (const std::string* v = text(key)) {
      try {
        out = from_string(*v);
      } catch (const Error& e) {
        throw ValidationError(path(key), e.what());
      }
    }
  }

  void reject_unused() const {
    for (const Entry& e : section_.entries)
      if (!e.used) throw ValidationError(path(e.key), "unknown key");
  }

  template <typename T>
  static T parse(const std::string& s, const std::string& key) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ValidationError(key, "'" + s + "' is not a valid " +
                                     (std::is_floating_point_v<T> ? "number" : "integer"));
    if constexpr (std::is_floating_point_v<T>)
      if (!std::isfinite(v)) throw ValidationError(key, "must be finite");
    return v;
  }

 private:
  Section& section_;
  std::string prefix_;
};

std::vector<WalkerShell> parse_shells(const std::string& text, const std::string& key) {
  std::vector<WalkerShell> out;
  for (const std::string& item : split_list(text)) {
    const auto at = item.find('@');
    const auto parts = split_list(item.substr(0, at), ':');
    if (at == std::string::npos || parts.size() != 3)
      throw ValidationError(key, "expected N:P:F@inclination, got '" + item + "'");
    out.push_back({Reader::parse<int>(parts[0], key), Reader::parse<int>(parts[1], key),
                   Reader::parse<int>(parts[2], key),
                   Reader::parse<double>(trim(item.substr(at + 1)), key)});
  }
  if (out.empty()) throw ValidationError(key, "at least one shell is required");
  return out;
}

void read_layer(Reader& r, ConstellationLayer& layer, bool fresh) {
  const auto required = [&](std::string_view key) {
    if (fresh && !r.text(key)) throw ValidationError(r.path(key), "required for a new layer");
  };
  required("orbit_class");
  required("altitude");
  required("cell_radius");
  r.enumeration("orbit_class", layer.orbit_class, orbit_class_from_string);
  r.number("altitude", layer.altitude_km);
  r.number("cell_radius", layer.cell_radius_km);
  r.number("beams", layer.beams_per_satellite);
  r.optional_number("velocity_override", layer.velocity_override_km_s);
  r.optional_number("max_satellites", layer.max_satellites);
  r.string("tle", layer.tle_path);
  if (const std::string* w = r.text("walker")) {
    layer.shells = parse_shells(*w, r.path("walker"));
    layer.satellite_count = 0;
    for (const auto& s : layer.shells) layer.satellite_count += s.total_satellites;
  }
  r.number("satellites", layer.satellite_count);
  if (fresh && layer.shells.empty() && layer.tle_path.empty())
    throw ValidationError(r.path("walker"), "a new layer needs walker or tle");
}

void read_radio(Reader& r, RadioParams& p, std::string_view dir) {
  const std::string d(dir);
  r.number(d + "_eirp", p.eirp_dbw);
  r.number(d + "_g_over_t", p.g_over_t_db_k);
  r.number(d + "_bandwidth", p.bandwidth_hz);
  r.number(d + "_frequency", p.carrier_frequency_hz);
}

std::string num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  auto sections = tokenize(text);
  const auto section = [&](std::string_view name) -> Section* {
    for (Section& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  };
  for (const Section& s : sections) {
    static const std::vector<std::string> known{"scenario", "constellation", "ue_region",
                                                "association", "loss", "visibility", "sweep"};
    const bool dynamic = s.name.rfind("layer.", 0) == 0 || s.name.rfind("radio.", 0) == 0;
    if (!dynamic && std::find(known.begin(), known.end(), s.name) == known.end())
      throw ValidationError(s.name, "unknown section");
  }

  ScenarioConfig cfg;
  Section* scenario = section("scenario");
  if (!scenario) throw ValidationError("scenario", "section is required");
  {
    Reader r(*scenario, "scenario");
    r.string("name", cfg.name);
    r.number("seed", cfg.seed);
    if (!r.text("n_ues")) throw ValidationError("scenario.n_ues", "is required");
    r.number("n_ues", cfg.n_ues);
    r.number("duration", cfg.duration_s);
    r.number("time_step", cfg.time_step_s);
    r.number("min_elevation", cfg.min_elevation_deg);
    r.number("active_fraction", cfg.active_fraction);
    r.enumeration("direction", cfg.direction, link_direction_from_string);
    if (const std::string* m = r.text("metrics")) cfg.metrics = split_list(*m);
    r.number("coverage_samples", cfg.coverage_samples);
    r.reject_unused();
  }

  if (Section* s = section("constellation")) {
    Reader r(*s, "constellation");
    r.string("preset", cfg.preset);
    r.reject_unused();
    if (!cfg.preset.empty()) {
      try {
        cfg.layers = preset_by_name(cfg.preset);
      } catch (const Error& e) {
        throw ValidationError("constellation.preset", e.what());
      }
    }
  }
  for (Section& s : sections) {
    if (s.name.rfind("layer.", 0) != 0) continue;
    const std::string id = s.name.substr(6);
    if (id.empty()) throw ValidationError(s.name, "layer id must not be empty");
    auto it = std::find_if(cfg.layers.begin(), cfg.layers.end(),
                           [&](const ConstellationLayer& l) { return l.layer_id == id; });
    const bool fresh = it == cfg.layers.end();
    if (fresh) {
      cfg.layers.emplace_back();
      cfg.layers.back().layer_id = id;
      it = cfg.layers.end() - 1;
    }
    Reader r(s, s.name);
    read_layer(r, *it, fresh);
    r.reject_unused();
  }
  if (cfg.layers.empty())
    throw ValidationError("constellation", "needs a preset or at least one [layer.<id>] section");

  for (const auto& layer : cfg.layers) cfg.radio.push_back(default_layer_radio(layer.orbit_class));
  for (Section& s : sections) {
    if (s.name.rfind("radio.", 0) != 0) continue;
    const std::string id = s.name.substr(6);
    const auto it = std::find_if(cfg.layers.begin(), cfg.layers.end(),
                                 [&](const ConstellationLayer& l) { return l.layer_id == id; });
    if (it == cfg.layers.end()) throw ValidationError(s.name, "no layer with this id");
    LayerRadio& radio = cfg.radio[static_cast<std::size_t>(it - cfg.layers.begin())];
    Reader r(s, s.name);
    read_radio(r, radio.downlink, "downlink");
    read_radio(r, radio.uplink, "uplink");
    r.reject_unused();
  }

  if (Section* s = section("ue_region")) {
    Reader r(*s, "ue_region");
    r.enumeration("kind", cfg.ue_region.kind, region_kind_from_string);
    r.number("lat_min", cfg.ue_region.lat_min_deg);
    r.number("lat_max", cfg.ue_region.lat_max_deg);
    r.number("centre_lat", cfg.ue_region.centre_lat_deg);
    r.number("centre_lon", cfg.ue_region.centre_lon_deg);
    r.number("radius", cfg.ue_region.radius_km);
    r.reject_unused();
  }

  if (Section* s = section("association")) {
    Reader r(*s, "association");
    r.enumeration("policy", cfg.policy, association_policy_from_string);
    r.number("max_rounds", cfg.max_rounds);
    r.enumeration("beam_membership", cfg.beam_membership, beam_membership_from_string);
    r.reject_unused();
  }

  if (Section* s = section("loss")) {
    Reader r(*s, "loss");
    LossModelConfig& loss = cfg.loss;
    r.enumeration("environment", loss.environment, environment_from_string);
    loss.shadowing_sigma_db = default_shadowing_sigma(loss.environment);
    r.number("shadowing_sigma", loss.shadowing_sigma_db);
    r.number("rain_margin", loss.rain_margin_db);
    r.boolean("atmospheric", loss.atmospheric_enabled);
    r.boolean("rain", loss.rain_enabled);
    r.boolean("scintillation", loss.scintillation_enabled);
    r.boolean("shadowing", loss.shadowing_enabled);
    r.string("atmospheric_table", cfg.atmospheric_table_path);
    r.string("scintillation_table", cfg.scintillation_table_path);
    r.reject_unused();
    if (!(loss.shadowing_sigma_db >= 0.0)) throw ValidationError("loss.shadowing_sigma", "must be >= 0");
    if (!(loss.rain_margin_db >= 0.0)) throw ValidationError("loss.rain_margin", "must be >= 0");
    const auto load_table = [](const std::string& path, const std::string& key) {
      try {
        return LossTable::load(path);
      } catch (const Error& e) {
        throw ValidationError(key, e.what());
      }
    };
    if (!cfg.atmospheric_table_path.empty())
      loss.atmospheric = load_table(cfg.atmospheric_table_path, "loss.atmospheric_table");
    if (!cfg.scintillation_table_path.empty())
      loss.scintillation = load_table(cfg.scintillation_table_path, "loss.scintillation_table");
  }

  if (Section* s = section("visibility")) {
    Reader r(*s, "visibility");
    r.numbers("latitudes", cfg.visibility.latitudes_deg);
    r.numbers("longitudes", cfg.visibility.longitudes_deg);
    r.number("time_step", cfg.visibility.time_step_s);
    r.number("horizon", cfg.visibility.horizon_s);
    r.reject_unused();
  }

  if (Section* s = section("sweep")) {
    Reader r(*s, "sweep");
    SweepSpec spec;
    if (!r.text("param")) throw ValidationError("sweep.param", "is required");
    r.enumeration("param", spec.param, sweep_param_from_string);
    if (const std::string* v = r.text("values")) spec.values = split_list(*v);
    r.numbers("cell_radius", spec.cell_radius_km);
    r.reject_unused();
    cfg.sweep = std::move(spec);
  }

  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "[scenario]\n"
      << "name = " << cfg.name << '\n'
      << "seed = " << cfg.seed << '\n'
      << "n_ues = " << cfg.n_ues << '\n'
      << "duration = " << num(cfg.duration_s) << '\n'
      << "time_step = " << num(cfg.time_step_s) << '\n'
      << "min_elevation = " << num(cfg.min_elevation_deg) << '\n'
      << "active_fraction = " << num(cfg.active_fraction) << '\n'
      << "direction = " << to_string(cfg.direction) << '\n';
  if (!cfg.metrics.empty()) out << "metrics = " << join(cfg.metrics) << '\n';
  out << "coverage_samples = " << cfg.coverage_samples << '\n';

  if (!cfg.preset.empty()) out << "\n[constellation]\npreset = " << cfg.preset << '\n';

  for (std::size_t i = 0; i < cfg.layers.size(); ++i) {
    const ConstellationLayer& l = cfg.layers[i];
    out << "\n[layer." << l.layer_id << "]\n"
        << "orbit_class = " << to_string(l.orbit_class) << '\n'
        << "altitude = " << num(l.altitude_km) << '\n'
        << "cell_radius = " << num(l.cell_radius_km) << '\n'
        << "beams = " << l.beams_per_satellite << '\n';
    if (!l.shells.empty()) {
      out << "walker = ";
      for (std::size_t s = 0; s < l.shells.size(); ++s)
        out << (s ? ", " : "") << l.shells[s].total_satellites << ':' << l.shells[s].planes << ':'
            << l.shells[s].phasing << '@' << num(l.shells[s].inclination_deg);
      out << '\n';
    }
    out << "satellites = " << l.satellite_count << '\n';
    if (l.velocity_override_km_s) out << "velocity_override = " << num(*l.velocity_override_km_s) << '\n';
    if (!l.tle_path.empty()) out << "tle = " << l.tle_path << '\n';
    if (l.max_satellites) out << "max_satellites = " << *l.max_satellites << '\n';

    const LayerRadio& r = cfg.radio.at(i);
    out << "\n[radio." << l.layer_id << "]\n";
    for (const auto& [dir, p] : {std::pair{"downlink", &r.downlink}, std::pair{"uplink", &r.uplink}})
      out << dir << "_eirp = " << num(p->eirp_dbw) << '\n'
          << dir << "_g_over_t = " << num(p->g_over_t_db_k) << '\n'
          << dir << "_bandwidth = " << num(p->bandwidth_hz) << '\n'
          << dir << "_frequency = " << num(p->carrier_frequency_hz) << '\n';
  }

  const UeRegion& u = cfg.ue_region;
  out << "\n[ue_region]\nkind = " << to_string(u.kind) << '\n';
  if (u.kind == UeRegion::Kind::kLatBand)
    out << "lat_min = " << num(u.lat_min_deg) << "\nlat_max = " << num(u.lat_max_deg) << '\n';
  if (u.kind == UeRegion::Kind::kDisk)
    out << "centre_lat = " << num(u.centre_lat_deg) << "\ncentre_lon = " << num(u.centre_lon_deg)
        << "\nradius = " << num(u.radius_km) << '\n';

  out << "\n[association]\n"
      << "policy = " << to_string(cfg.policy) << '\n'
      << "max_rounds = " << cfg.max_rounds << '\n'
      << "beam_membership = " << to_string(cfg.beam_membership) << '\n';

  const LossModelConfig& loss = cfg.loss;
  const auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "\n[loss]\n"
      << "environment = " << to_string(loss.environment) << '\n'
      << "shadowing_sigma = " << num(loss.shadowing_sigma_db) << '\n'
      << "rain_margin = " << num(loss.rain_margin_db) << '\n'
      << "atmospheric = " << flag(loss.atmospheric_enabled) << '\n'
      << "rain = " << flag(loss.rain_enabled) << '\n'
      << "scintillation = " << flag(loss.scintillation_enabled) << '\n'
      << "shadowing = " << flag(loss.shadowing_enabled) << '\n';
  if (!cfg.atmospheric_table_path.empty()) out << "atmospheric_table = " << cfg.atmospheric_table_path << '\n';
  if (!cfg.scintillation_table_path.empty())
    out << "scintillation_table = " << cfg.scintillation_table_path << '\n';

  out << "\n[visibility]\n"
      << "latitudes = " << join_numbers(cfg.visibility.latitudes_deg) << '\n'
      << "longitudes = " << join_numbers(cfg.visibility.longitudes_deg) << '\n'
      << "time_step = " << num(cfg.visibility.time_step_s) << '\n'
      << "horizon = " << num(cfg.visibility.horizon_s) << '\n';

  if (cfg.sweep) {
    out << "\n[sweep]\nparam = " << to_string(cfg.sweep->param) << '\n'
        << "values = " << join(cfg.sweep->values) << '\n';
    if (!cfg.sweep->cell_radius_km.empty())
      out << "cell_radius = " << join_numbers(cfg.sweep->cell_radius_km) << '\n';
  }
  return out.str();
}

}  // namespace orbnet
