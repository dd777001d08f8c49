#ifndef ORBNET_ORBNET_H
#define ORBNET_ORBNET_H

/* C interface to the orbnet simulator. Handles are opaque; every function
 * returns an orbnet_status and leaves a message for orbnet_last_error() on
 * failure. Strings returned through out-parameters are owned by the caller
 * and released with orbnet_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ORBNET_BUILDING_LIBRARY)
#    define ORBNET_API __declspec(dllexport)
#  else
#    define ORBNET_API __declspec(dllimport)
#  endif
#else
#  define ORBNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orbnet_status {
  ORBNET_OK = 0,
  ORBNET_ERR_INVALID_ARGUMENT = 1,
  ORBNET_ERR_SUBSURFACE_POINT = 2,
  ORBNET_ERR_RADIUS_OUT_OF_RANGE = 3,
  ORBNET_ERR_INVALID_WALKER_SPEC = 4,
  ORBNET_ERR_TLE_CHECKSUM = 5,
  ORBNET_ERR_TLE_FORMAT = 6,
  ORBNET_ERR_INVALID_FRACTION = 7,
  ORBNET_ERR_NON_POSITIVE_INPUT = 8,
  ORBNET_ERR_ELEVATION_OUT_OF_RANGE = 9,
  ORBNET_ERR_NOT_VISIBLE = 10,
  ORBNET_ERR_ZERO_USERS = 11,
  ORBNET_ERR_NO_PASS_OBSERVED = 12,
  ORBNET_ERR_NO_SERVED_USERS = 13,
  ORBNET_ERR_EMPTY_REGION = 14,
  ORBNET_ERR_PARSE = 15,
  ORBNET_ERR_VALIDATION = 16,
  ORBNET_ERR_IO = 17,
  ORBNET_ERR_NULL_POINTER = 100,
  ORBNET_ERR_NOT_FOUND = 101,
  ORBNET_ERR_INTERNAL = 102
} orbnet_status;

typedef enum orbnet_format { ORBNET_FORMAT_CSV = 0, ORBNET_FORMAT_JSON = 1 } orbnet_format;

typedef struct orbnet_config orbnet_config;
typedef struct orbnet_results orbnet_results;

/* Message of the last failure on this thread; empty after success. */
ORBNET_API const char* orbnet_last_error(void);
ORBNET_API const char* orbnet_status_name(orbnet_status status);
ORBNET_API const char* orbnet_version(void);
ORBNET_API void orbnet_string_free(char* s);

ORBNET_API orbnet_status orbnet_config_load(const char* path, orbnet_config** out);
ORBNET_API orbnet_status orbnet_config_parse(const char* text, orbnet_config** out);
/* name: "starlink" or "iris2". */
ORBNET_API orbnet_status orbnet_config_from_preset(const char* name, orbnet_config** out);
ORBNET_API orbnet_status orbnet_config_to_text(const orbnet_config* cfg, char** out);
ORBNET_API orbnet_status orbnet_config_set_seed(orbnet_config* cfg, uint64_t seed);
ORBNET_API orbnet_status orbnet_config_get_seed(const orbnet_config* cfg, uint64_t* out);
/* Replaces the configuration's sweep. values is a comma-separated list. */
ORBNET_API orbnet_status orbnet_config_set_sweep(orbnet_config* cfg, const char* param,
                                                 const char* values);
ORBNET_API void orbnet_config_free(orbnet_config* cfg);

/* Runs the configuration's sweep when it has one, otherwise a single run. */
ORBNET_API orbnet_status orbnet_run(const orbnet_config* cfg, orbnet_results** out);

ORBNET_API orbnet_status orbnet_results_row_count(const orbnet_results* results, size_t* out);
/* First row matching metric_name and sweep_value (NULL or "" matches any). */
ORBNET_API orbnet_status orbnet_results_get_metric(const orbnet_results* results,
                                                   const char* metric_name,
                                                   const char* sweep_value, double* out);
ORBNET_API orbnet_status orbnet_results_to_text(const orbnet_results* results,
                                                orbnet_format format, char** out);
ORBNET_API orbnet_status orbnet_results_write(const orbnet_results* results, orbnet_format format,
                                              const char* path);
ORBNET_API void orbnet_results_free(orbnet_results* results);

#ifdef __cplusplus
}
#endif

#endif /* ORBNET_ORBNET_H */
