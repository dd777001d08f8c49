#include "orbnet/orbnet.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "orbnet/config.hpp"
#include "orbnet/error.hpp"
#include "orbnet/results.hpp"

struct orbnet_config {
  orbnet::ScenarioConfig cfg;
};

struct orbnet_results {
  orbnet::ResultsTable table;
};

namespace {

thread_local std::string g_last_error;

orbnet_status fail(orbnet_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
orbnet_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return ORBNET_OK;
  } catch (const orbnet::Error& e) {
    return fail(static_cast<orbnet_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ORBNET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ORBNET_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ORBNET_ERR_INTERNAL, "unknown exception");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

orbnet::ResultsFormat to_format(orbnet_format f) {
  if (f == ORBNET_FORMAT_CSV) return orbnet::ResultsFormat::kCsv;
  if (f == ORBNET_FORMAT_JSON) return orbnet::ResultsFormat::kJson;
  throw orbnet::Error(orbnet::ErrorCode::kInvalidArgument, "unknown results format");
}

}  // namespace

#define ORBNET_REQUIRE(ptr) \
  if (!(ptr)) return fail(ORBNET_ERR_NULL_POINTER, #ptr " must not be NULL")

extern "C" {

const char* orbnet_last_error(void) { return g_last_error.c_str(); }

const char* orbnet_status_name(orbnet_status status) {
  switch (status) {
    case ORBNET_OK: return "OK";
    case ORBNET_ERR_NULL_POINTER: return "NullPointer";
    case ORBNET_ERR_NOT_FOUND: return "NotFound";
    case ORBNET_ERR_INTERNAL: return "InternalError";
    default: return orbnet::error_code_name(static_cast<orbnet::ErrorCode>(status));
  }
}

const char* orbnet_version(void) { return "0.1.0"; }

void orbnet_string_free(char* s) { std::free(s); }

orbnet_status orbnet_config_load(const char* path, orbnet_config** out) {
  ORBNET_REQUIRE(path);
  ORBNET_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new orbnet_config{orbnet::load_config(path)}; });
}

orbnet_status orbnet_config_parse(const char* text, orbnet_config** out) {
  ORBNET_REQUIRE(text);
  ORBNET_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new orbnet_config{orbnet::parse_config(text)}; });
}

orbnet_status orbnet_config_from_preset(const char* name, orbnet_config** out) {
  ORBNET_REQUIRE(name);
  ORBNET_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new orbnet_config{orbnet::scenario_from_preset(name)}; });
}

orbnet_status orbnet_config_to_text(const orbnet_config* cfg, char** out) {
  ORBNET_REQUIRE(cfg);
  ORBNET_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = copy_string(orbnet::format_config(cfg->cfg)); });
}

orbnet_status orbnet_config_set_seed(orbnet_config* cfg, uint64_t seed) {
  ORBNET_REQUIRE(cfg);
  return guarded([&] { cfg->cfg.seed = seed; });
}

orbnet_status orbnet_config_get_seed(const orbnet_config* cfg, uint64_t* out) {
  ORBNET_REQUIRE(cfg);
  ORBNET_REQUIRE(out);
  return guarded([&] { *out = cfg->cfg.seed; });
}

orbnet_status orbnet_config_set_sweep(orbnet_config* cfg, const char* param, const char* values) {
  ORBNET_REQUIRE(cfg);
  ORBNET_REQUIRE(param);
  ORBNET_REQUIRE(values);
  return guarded([&] {
    orbnet::ScenarioConfig next = cfg->cfg;
    orbnet::SweepSpec spec;
    spec.param = orbnet::sweep_param_from_string(param);
    std::string item;
    for (const char* p = values;; ++p) {
      if (*p == ',' || *p == '\0') {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos)
          throw orbnet::ValidationError("sweep.values", "empty value in list");
        spec.values.push_back(item.substr(b, e - b + 1));
        item.clear();
        if (*p == '\0') break;
      } else {
        item += *p;
      }
    }
    if (next.sweep && next.sweep->param == spec.param &&
        next.sweep->cell_radius_km.size() == spec.values.size())
      spec.cell_radius_km = next.sweep->cell_radius_km;
    next.sweep = std::move(spec);
    orbnet::validate(next);
    cfg->cfg = std::move(next);
  });
}

void orbnet_config_free(orbnet_config* cfg) { delete cfg; }

orbnet_status orbnet_run(const orbnet_config* cfg, orbnet_results** out) {
  ORBNET_REQUIRE(cfg);
  ORBNET_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new orbnet_results{orbnet::run_to_table(cfg->cfg)}; });
}

orbnet_status orbnet_results_row_count(const orbnet_results* results, size_t* out) {
  ORBNET_REQUIRE(results);
  ORBNET_REQUIRE(out);
  return guarded([&] { *out = results->table.size(); });
}

orbnet_status orbnet_results_get_metric(const orbnet_results* results, const char* metric_name,
                                        const char* sweep_value, double* out) {
  ORBNET_REQUIRE(results);
  ORBNET_REQUIRE(metric_name);
  ORBNET_REQUIRE(out);
  for (const auto& row : results->table.rows()) {
    if (row.metric_name != metric_name) continue;
    if (sweep_value && *sweep_value && row.sweep_value != sweep_value) continue;
    *out = row.metric_value;
    g_last_error.clear();
    return ORBNET_OK;
  }
  return fail(ORBNET_ERR_NOT_FOUND, std::string("no row for metric '") + metric_name + "'");
}

orbnet_status orbnet_results_to_text(const orbnet_results* results, orbnet_format format,
                                     char** out) {
  ORBNET_REQUIRE(results);
  ORBNET_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = copy_string(results->table.serialize(to_format(format))); });
}

orbnet_status orbnet_results_write(const orbnet_results* results, orbnet_format format,
                                   const char* path) {
  ORBNET_REQUIRE(results);
  ORBNET_REQUIRE(path);
  return guarded([&] { results->table.write(to_format(format), path); });
}

void orbnet_results_free(orbnet_results* results) { delete results; }

}  // extern "C"
