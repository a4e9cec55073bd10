/* C interface to the wsmf multifractal analysis library. */
#ifndef WSMF_WSMF_H
#define WSMF_WSMF_H

#include <stddef.h>

#if defined(WSMF_BUILDING_LIBRARY)
#define WSMF_API __attribute__((visibility("default")))
#else
#define WSMF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 2..4 double as the CLI exit codes. */
typedef enum wsmf_status {
  WSMF_OK = 0,
  WSMF_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer */
  WSMF_ERR_VALIDATION = 2,
  WSMF_ERR_COMPUTE = 3,
  WSMF_ERR_IO = 4
} wsmf_status;

typedef struct wsmf_config wsmf_config;
typedef struct wsmf_report wsmf_report;
typedef struct wsmf_signal_set wsmf_signal_set;
typedef struct wsmf_pyramid wsmf_pyramid;

WSMF_API const char* wsmf_version(void);
WSMF_API const char* wsmf_status_name(wsmf_status status);
/* Message of the last failed call on this thread; "" after a success. */
WSMF_API const char* wsmf_last_error(void);

WSMF_API wsmf_status wsmf_config_create(wsmf_config** out);
WSMF_API void wsmf_config_destroy(wsmf_config* config);
WSMF_API wsmf_status wsmf_config_set(wsmf_config* config, const char* key, const char* value);
/* Reads a key=value file with [section] headers; its entries override existing ones. */
WSMF_API wsmf_status wsmf_config_load(wsmf_config* config, const char* path);

/* command: "analyze", "synth", "hmin", "split" or "spectrum". */
WSMF_API wsmf_status wsmf_run(const char* command, const wsmf_config* config, wsmf_report** out);
/* The JSON text stays valid until the report is destroyed. */
WSMF_API wsmf_status wsmf_report_json(const wsmf_report* report, const char** json, size_t* length);
WSMF_API size_t wsmf_report_table_count(const wsmf_report* report);
/* Either path may be NULL or empty to skip that output. */
WSMF_API wsmf_status wsmf_report_write(const wsmf_report* report, const char* json_path, const char* tsv_dir);
WSMF_API void wsmf_report_destroy(wsmf_report* report);

/* format: "csv", "raw" or "auto". */
WSMF_API wsmf_status wsmf_signal_set_read(const char* path, const char* format, wsmf_signal_set** out);
WSMF_API size_t wsmf_signal_set_count(const wsmf_signal_set* set);
WSMF_API wsmf_status wsmf_signal_set_get(const wsmf_signal_set* set, size_t channel, const double** samples,
                                         size_t* length, const char** label);
WSMF_API void wsmf_signal_set_destroy(wsmf_signal_set* set);

/* Daubechies wavelet with the given vanishing moments; every level from
   j_coarse to the finest the length supports. */
WSMF_API wsmf_status wsmf_pyramid_decompose(const double* samples, size_t length, int vanishing_moments,
                                            int j_coarse, wsmf_pyramid** out);
/* c_{j,k} -> 2^{-s j} c_{j,k} into a new pyramid. */
WSMF_API wsmf_status wsmf_pyramid_integrate(const wsmf_pyramid* pyramid, double s, wsmf_pyramid** out);
WSMF_API wsmf_status wsmf_pyramid_range(const wsmf_pyramid* pyramid, int* j_coarse, int* j_fine);
WSMF_API wsmf_status wsmf_pyramid_level(const wsmf_pyramid* pyramid, int j, const double** coeffs, size_t* count,
                                        size_t* interior);
WSMF_API wsmf_status wsmf_pyramid_hmin(const wsmf_pyramid* pyramid, int j1, int j2, double* out);
WSMF_API void wsmf_pyramid_destroy(wsmf_pyramid* pyramid);

#ifdef __cplusplus
}
#endif

#endif /* WSMF_WSMF_H */
