#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "orbnet/error.hpp"
#include "orbnet/results.hpp"

using namespace orbnet;

TEST_CASE("metric values print with six significant digits") {
  CHECK(format_metric_value(0) == "0");
  CHECK(format_metric_value(27.777777) == "27.7778");
  CHECK(format_metric_value(1.2345678e9) == "1.23457e+09");
}

TEST_CASE("CSV and JSON forms") {
  ResultsTable t;
  MetricsReport r;
  r.values = {{"a", 1.5, "ms"}, {"b", 2e9, "bit/s"}};
  t.add_report("s,1", "n_ues", "100", 7, r);
  CHECK(t.size() == 2);
  const std::string csv = t.to_csv();
  CHECK(csv.rfind(std::string(kResultsHeader) + "\n", 0) == 0);
  CHECK(csv.find("\"s,1\",n_ues,100,a,1.5,ms,7\n") != std::string::npos);
  CHECK(ResultsTable::parse_csv(csv).rows() == t.rows());

  const auto j = nlohmann::json::parse(t.to_json());
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  CHECK(j[1]["metric_name"] == "b");
  CHECK(j[1]["metric_value"].get<double>() == 2e9);
  CHECK(j[0]["seed"].get<std::uint64_t>() == 7);
}

TEST_CASE("empty table and format agreement") {
  ResultsTable t;
  CHECK(t.to_csv() == std::string(kResultsHeader) + "\n");
  CHECK(nlohmann::json::parse(t.to_json()).empty());
  t.add({"s", "none", "", "x", 0.123456789, "u", 1});
  t.add({"s", "none", "", "y", 9.87654321e-7, "u", 1});
  const ResultsTable back = ResultsTable::parse_csv(t.to_csv());
  CHECK(back.size() == nlohmann::json::parse(t.to_json()).size());
  CHECK(back.rows()[0].metric_value == doctest::Approx(0.123457).epsilon(1e-9));
  CHECK(back.rows()[1].metric_value == doctest::Approx(9.87654e-7).epsilon(1e-9));
}

TEST_CASE("duplicate rows are rejected") {
  ResultsTable t;
  t.add({"s", "none", "", "m", 1, "x", 1});
  CHECK_THROWS_AS(t.add({"s", "none", "", "m", 2, "x", 1}), Error);
  CHECK_NOTHROW(t.add({"s", "none", "", "m", 2, "x", 2}));
}

TEST_CASE("malformed CSV") {
  try {
    ResultsTable::parse_csv(std::string(kResultsHeader) + "\na,b,c\n");
    FAIL("expected LineError");
  } catch (const LineError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(ResultsTable::parse_csv("wrong,header\n"), LineError);
}

TEST_CASE("write to disk") {
  ResultsTable t;
  t.add({"s", "none", "", "m", 1, "x", 1});
  const auto path = std::filesystem::temp_directory_path() / "orbnet_results_test.csv";
  t.write(ResultsFormat::kCsv, path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == t.to_csv());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(t.write(ResultsFormat::kCsv, "/nonexistent/dir/x.csv"), Error);
}
