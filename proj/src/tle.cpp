#include "orbnet/tle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "orbnet/error.hpp"

namespace orbnet {

namespace {

constexpr std::size_t kLineLength = 69;

std::string_view rstrip(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string_view trim(std::string_view s) {
  s = rstrip(s);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

// Columns are 1-based and inclusive, as printed in the format definition.
std::string_view columns(std::string_view line, int first, int last) {
  return line.substr(static_cast<std::size_t>(first - 1), static_cast<std::size_t>(last - first + 1));
}

double parse_double(std::string_view field, int line_no, const char* what) {
  const std::string text(trim(field));
  if (text.empty()) throw LineError(ErrorCode::kTleFormat, line_no, std::string("empty ") + what);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw LineError(ErrorCode::kTleFormat, line_no,
                    std::string("cannot parse ") + what + " from '" + text + "'");
  }
}

int parse_int(std::string_view field, int line_no, const char* what) {
  const std::string_view text = trim(field);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw LineError(ErrorCode::kTleFormat, line_no,
                    std::string("cannot parse ") + what + " from '" + std::string(text) + "'");
  return v;
}

void check_line(std::string_view line, char kind, int line_no) {
  if (line.size() != kLineLength)
    throw LineError(ErrorCode::kTleFormat, line_no,
                    "expected 69 columns, got " + std::to_string(line.size()));
  if (line[0] != kind || line[1] != ' ')
    throw LineError(ErrorCode::kTleFormat, line_no,
                    std::string("expected line type '") + kind + "'");
  const char digit = line[68];
  if (digit < '0' || digit > '9')
    throw LineError(ErrorCode::kTleFormat, line_no, "checksum column is not a digit");
  const int expected = tle_checksum(line);
  if (digit - '0' != expected)
    throw LineError(ErrorCode::kTleChecksum, line_no,
                    "checksum mismatch: file has " + std::string(1, digit) + ", computed " +
                        std::to_string(expected));
}

// Days since 1970-01-01 for a proleptic Gregorian date.
long long days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2 ? 1 : 0;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

double epoch_seconds(const TleRecord& r) {
  const double days = static_cast<double>(days_from_civil(r.epoch_year, 1, 1)) + r.epoch_day - 1.0;
  return days * 86400.0;
}

double wrap_360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  return r >= 360.0 ? r - 360.0 : r;
}

TleRecord parse_pair(std::string_view l1, std::string_view l2, int line_no, std::string name,
                     const EarthModel& earth) {
  check_line(l1, '1', line_no);
  check_line(l2, '2', line_no + 1);

  TleRecord r;
  r.name = std::move(name);
  r.catalog_number = parse_int(columns(l1, 3, 7), line_no, "catalog number");
  const int catalog2 = parse_int(columns(l2, 3, 7), line_no + 1, "catalog number");
  if (catalog2 != r.catalog_number)
    throw LineError(ErrorCode::kTleFormat, line_no + 1, "catalog number differs from line 1");

  const int yy = parse_int(columns(l1, 19, 20), line_no, "epoch year");
  r.epoch_year = yy < 57 ? 2000 + yy : 1900 + yy;
  r.epoch_day = parse_double(columns(l1, 21, 32), line_no, "epoch day");

  const int l2_no = line_no + 1;
  const double inclination = parse_double(columns(l2, 9, 16), l2_no, "inclination");
  const double raan = parse_double(columns(l2, 18, 25), l2_no, "RAAN");
  const double ecc =
      parse_double(std::string("0.") + std::string(trim(columns(l2, 27, 33))), l2_no, "eccentricity");
  r.argument_of_perigee_deg = parse_double(columns(l2, 35, 42), l2_no, "argument of perigee");
  r.mean_anomaly_deg = parse_double(columns(l2, 44, 51), l2_no, "mean anomaly");
  r.mean_motion_rev_per_day = parse_double(columns(l2, 53, 63), l2_no, "mean motion");

  if (!(r.mean_motion_rev_per_day > 0.0))
    throw LineError(ErrorCode::kTleFormat, l2_no, "mean motion must be positive");
  if (ecc >= kMaxEccentricity)
    throw LineError(ErrorCode::kTleFormat, l2_no,
                    "eccentricity " + std::to_string(ecc) + " is outside the circular-orbit model");

  const double n_rad_s = r.mean_motion_rev_per_day * 2.0 * std::numbers::pi / 86400.0;
  OrbitalElements& el = r.elements;
  el.semi_major_axis_km = std::cbrt(earth.mu_km3_s2 / (n_rad_s * n_rad_s));
  el.inclination_deg = inclination;
  el.raan_deg = wrap_360(raan);
  el.eccentricity = ecc;
  el.argument_of_latitude_deg = wrap_360(r.argument_of_perigee_deg + r.mean_anomaly_deg);
  if (!(el.semi_major_axis_km > earth.radius_km))
    throw LineError(ErrorCode::kTleFormat, l2_no, "orbit lies below the Earth's surface");
  return r;
}

}  // namespace

int tle_checksum(std::string_view line) {
  int sum = 0;
  const std::size_t n = std::min<std::size_t>(line.size(), kLineLength - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const char c = line[i];
    if (c >= '0' && c <= '9') sum += c - '0';
    else if (c == '-') sum += 1;
  }
  return sum % 10;
}

std::vector<TleRecord> parse_tle_records(std::string_view text, const EarthModel& earth) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(rstrip(text.substr(0, nl)));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }

  std::vector<TleRecord> records;
  std::string pending_name;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    const int line_no = static_cast<int>(i) + 1;
    if (trim(line).empty()) continue;
    if (line.size() >= 2 && line[0] == '1' && line[1] == ' ') {
      if (i + 1 >= lines.size())
        throw LineError(ErrorCode::kTleFormat, line_no, "line 1 without a following line 2");
      records.push_back(parse_pair(line, lines[i + 1], line_no, std::move(pending_name), earth));
      pending_name.clear();
      ++i;
    } else if (line.size() >= 2 && line[0] == '2' && line[1] == ' ') {
      throw LineError(ErrorCode::kTleFormat, line_no, "line 2 without a preceding line 1");
    } else {
      std::string_view name = trim(line);
      if (name.size() >= 2 && name[0] == '0' && name[1] == ' ') name = trim(name.substr(2));
      pending_name = std::string(name);
    }
  }

  if (!records.empty()) {
    double origin = epoch_seconds(records.front());
    for (const auto& r : records) origin = std::min(origin, epoch_seconds(r));
    for (auto& r : records) r.elements.epoch_s = epoch_seconds(r) - origin;
  }
  return records;
}

std::vector<OrbitalElements> parse_tle(std::string_view text, const EarthModel& earth) {
  std::vector<OrbitalElements> out;
  for (auto& r : parse_tle_records(text, earth)) out.push_back(r.elements);
  return out;
}

std::vector<OrbitalElements> load_tle_file(const std::string& path, const EarthModel& earth) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open TLE file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tle(ss.str(), earth);
}

}  // namespace orbnet
