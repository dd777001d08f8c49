#pragma once

// Long-format results table with CSV and JSON serialisation.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "orbnet/scenario.hpp"

namespace orbnet {

inline constexpr std::string_view kResultsHeader =
    "scenario,sweep_param,sweep_value,metric_name,metric_value,unit,seed";

struct ResultRow {
  std::string scenario;
  std::string sweep_param;
  std::string sweep_value;
  std::string metric_name;
  double metric_value = 0.0;
  std::string unit;
  std::uint64_t seed = 0;

  bool operator==(const ResultRow&) const = default;
};

enum class ResultsFormat { kCsv, kJson };

ResultsFormat results_format_from_string(std::string_view s);

class ResultsTable {
 public:
  // Throws InvalidArgument when (scenario, sweep_value, metric_name, seed)
  // is already present.
  void add(ResultRow row);
  void add_report(const std::string& scenario, const std::string& sweep_param,
                  const std::string& sweep_value, std::uint64_t seed, const MetricsReport& report);

  const std::vector<ResultRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  std::string to_csv() const;
  std::string to_json() const;
  std::string serialize(ResultsFormat format) const;
  // Throws Io.
  void write(ResultsFormat format, const std::string& path) const;

  // Parses the CSV form. Throws LineError(Parse).
  static ResultsTable parse_csv(std::string_view text);

 private:
  std::vector<ResultRow> rows_;
};

// Six significant digits, as written to files.
std::string format_metric_value(double v);

// Runs the configuration's sweep when it has one, otherwise a single run.
ResultsTable run_to_table(const ScenarioConfig& cfg, const EarthModel& earth = {});

}  // namespace orbnet
