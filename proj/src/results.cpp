#include "orbnet/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "orbnet/error.hpp"

namespace orbnet {

namespace {

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

std::string csv_field(std::string_view s) {
  if (!needs_quotes(s)) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw LineError(ErrorCode::kParse, line_no, "unterminated quoted field");
  out.push_back(cur);
  return out;
}

}  // namespace

ResultsFormat results_format_from_string(std::string_view s) {
  if (s == "csv") return ResultsFormat::kCsv;
  if (s == "json") return ResultsFormat::kJson;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown results format '" + std::string(s) + "' (expected csv or json)");
}

std::string format_metric_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void ResultsTable::add(ResultRow row) {
  for (const ResultRow& r : rows_)
    if (std::tie(r.scenario, r.sweep_value, r.metric_name, r.seed) ==
        std::tie(row.scenario, row.sweep_value, row.metric_name, row.seed))
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate result row: " + row.scenario + "/" + row.sweep_value + "/" +
                      row.metric_name);
  rows_.push_back(std::move(row));
}

void ResultsTable::add_report(const std::string& scenario, const std::string& sweep_param,
                              const std::string& sweep_value, std::uint64_t seed,
                              const MetricsReport& report) {
  for (const MetricValue& v : report.values)
    add({scenario, sweep_param, sweep_value, v.name, v.value, v.unit, seed});
}

std::string ResultsTable::to_csv() const {
  std::string out(kResultsHeader);
  out += '\n';
  for (const ResultRow& r : rows_) {
    out += csv_field(r.scenario) + ',' + csv_field(r.sweep_param) + ',' + csv_field(r.sweep_value) +
           ',' + csv_field(r.metric_name) + ',' + format_metric_value(r.metric_value) + ',' +
           csv_field(r.unit) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

std::string ResultsTable::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ResultRow& r : rows_) {
    nlohmann::ordered_json row;
    row["scenario"] = r.scenario;
    row["sweep_param"] = r.sweep_param;
    row["sweep_value"] = r.sweep_value;
    row["metric_name"] = r.metric_name;
    // Same rounding as the CSV form so both carry identical values.
    row["metric_value"] = std::stod(format_metric_value(r.metric_value));
    row["unit"] = r.unit;
    row["seed"] = r.seed;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + '\n';
}

std::string ResultsTable::serialize(ResultsFormat format) const {
  return format == ResultsFormat::kCsv ? to_csv() : to_json();
}

void ResultsTable::write(ResultsFormat format, const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open for writing: " + path);
  out << serialize(format);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

ResultsTable ResultsTable::parse_csv(std::string_view text) {
  ResultsTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header) {
      if (line != kResultsHeader) throw LineError(ErrorCode::kParse, line_no, "unexpected header");
      header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_csv_line(line, line_no);
    if (f.size() != 7) throw LineError(ErrorCode::kParse, line_no, "expected 7 fields");
    ResultRow row{f[0], f[1], f[2], f[3], 0.0, f[5], 0};
    try {
      std::size_t used = 0;
      row.metric_value = std::stod(f[4], &used);
      if (used != f[4].size()) throw std::invalid_argument("trailing");
      row.seed = std::stoull(f[6], &used);
      if (used != f[6].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw LineError(ErrorCode::kParse, line_no, "non-numeric metric_value or seed");
    }
    table.add(std::move(row));
  }
  if (!header) throw LineError(ErrorCode::kParse, 1, "missing header");
  return table;
}

ResultsTable run_to_table(const ScenarioConfig& cfg, const EarthModel& earth) {
  ResultsTable table;
  if (cfg.sweep) {
    const std::string param(to_string(cfg.sweep->param));
    for (const SweepPoint& p : sweep(cfg, *cfg.sweep, earth))
      table.add_report(cfg.name, param, p.value, cfg.seed, p.report);
  } else {
    table.add_report(cfg.name, "none", "", cfg.seed, run_scenario(cfg, {}, earth).report);
  }
  return table;
}

}  // namespace orbnet
