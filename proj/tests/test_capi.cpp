#include <doctest.h>

#include <cstring>
#include <string>

#include "orbnet/orbnet.h"

namespace {

const char* kConfig =
    "[scenario]\n"
    "name = capi\n"
    "n_ues = 50\n"
    "duration = 600\n"
    "time_step = 300\n"
    "metrics = capacity\n"
    "[constellation]\n"
    "preset = iris2\n"
    "[ue_region]\n"
    "kind = disk\n"
    "centre_lat = 48\n"
    "centre_lon = 10\n"
    "radius = 300\n";

}  // namespace

TEST_CASE("null arguments") {
  orbnet_config* cfg = nullptr;
  CHECK(orbnet_config_parse(nullptr, &cfg) == ORBNET_ERR_NULL_POINTER);
  CHECK(std::strlen(orbnet_last_error()) > 0);
  CHECK(orbnet_run(nullptr, nullptr) == ORBNET_ERR_NULL_POINTER);
  orbnet_config_free(nullptr);
  orbnet_results_free(nullptr);
  orbnet_string_free(nullptr);
}

TEST_CASE("errors map to status codes") {
  orbnet_config* cfg = nullptr;
  CHECK(orbnet_config_parse("[scenario]\nn_ues = 1\nbogus = 1\n", &cfg) == ORBNET_ERR_VALIDATION);
  CHECK(cfg == nullptr);
  CHECK(std::string(orbnet_last_error()).find("scenario.bogus") != std::string::npos);
  CHECK(orbnet_config_parse("[scenario\n", &cfg) == ORBNET_ERR_PARSE);
  CHECK(orbnet_config_load("/nonexistent.cfg", &cfg) == ORBNET_ERR_IO);
  CHECK(orbnet_config_from_preset("oneweb", &cfg) == ORBNET_ERR_INVALID_ARGUMENT);
  CHECK(std::string(orbnet_status_name(ORBNET_ERR_TLE_CHECKSUM)) == "TleChecksumError");
  CHECK(std::string(orbnet_status_name(ORBNET_ERR_NOT_FOUND)) == "NotFound");
}

TEST_CASE("run through the C API") {
  orbnet_config* cfg = nullptr;
  REQUIRE(orbnet_config_parse(kConfig, &cfg) == ORBNET_OK);
  CHECK(std::strlen(orbnet_last_error()) == 0);
  CHECK(orbnet_config_set_seed(cfg, 9) == ORBNET_OK);
  uint64_t seed = 0;
  CHECK(orbnet_config_get_seed(cfg, &seed) == ORBNET_OK);
  CHECK(seed == 9);
  CHECK(orbnet_config_set_sweep(cfg, "n_ues", "25, 50") == ORBNET_OK);
  CHECK(orbnet_config_set_sweep(cfg, "n_ues", "25,,50") == ORBNET_ERR_VALIDATION);
  CHECK(orbnet_config_set_sweep(cfg, "speed", "1") != ORBNET_OK);

  orbnet_results* res = nullptr;
  REQUIRE(orbnet_run(cfg, &res) == ORBNET_OK);
  size_t rows = 0;
  CHECK(orbnet_results_row_count(res, &rows) == ORBNET_OK);
  CHECK(rows > 0);
  double a = 0, b = 0;
  CHECK(orbnet_results_get_metric(res, "per_ue_capacity_cell", "25", &a) == ORBNET_OK);
  CHECK(orbnet_results_get_metric(res, "per_ue_capacity_cell", "50", &b) == ORBNET_OK);
  CHECK(a == doctest::Approx(2 * b).epsilon(1e-5));
  CHECK(orbnet_results_get_metric(res, "nope", nullptr, &a) == ORBNET_ERR_NOT_FOUND);

  char* text = nullptr;
  CHECK(orbnet_results_to_text(res, ORBNET_FORMAT_CSV, &text) == ORBNET_OK);
  CHECK(std::string(text).rfind("scenario,sweep_param", 0) == 0);
  orbnet_string_free(text);
  CHECK(orbnet_results_to_text(res, ORBNET_FORMAT_JSON, &text) == ORBNET_OK);
  CHECK(text[0] == '[');
  orbnet_string_free(text);
  CHECK(orbnet_results_to_text(res, static_cast<orbnet_format>(7), &text) ==
        ORBNET_ERR_INVALID_ARGUMENT);
  CHECK(orbnet_results_write(res, ORBNET_FORMAT_CSV, "/nonexistent/dir/x.csv") == ORBNET_ERR_IO);

  char* cfg_text = nullptr;
  CHECK(orbnet_config_to_text(cfg, &cfg_text) == ORBNET_OK);
  orbnet_config* again = nullptr;
  CHECK(orbnet_config_parse(cfg_text, &again) == ORBNET_OK);
  orbnet_string_free(cfg_text);
  orbnet_config_free(again);
  orbnet_results_free(res);
  orbnet_config_free(cfg);
  CHECK(std::string(orbnet_version()) == "0.1.0");
}
