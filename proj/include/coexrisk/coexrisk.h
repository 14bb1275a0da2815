#ifndef COEXRISK_H
#define COEXRISK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define COEX_API __declspec(dllexport)
#else
#define COEX_API __attribute__((visibility("default")))
#endif

typedef enum coex_status {
    COEX_OK = 0,
    COEX_INVALID_ARGUMENT = 1,
    COEX_CONFIG_ERROR = 2,
    COEX_RUNTIME_ERROR = 3,
    COEX_IO_ERROR = 4
} coex_status;

typedef enum coex_metric { COEX_METRIC_DEGRADATION = 0, COEX_METRIC_UNFAIRNESS = 1 } coex_metric;

typedef enum coex_baseline { COEX_BASELINE_STANDALONE = 0, COEX_BASELINE_WIFI_ENTRANT = 1 } coex_baseline;

typedef struct coex_config coex_config;
typedef struct coex_campaign coex_campaign;
typedef struct coex_series coex_series;

/* Called from worker threads, one call at a time. */
typedef void (*coex_progress_fn)(size_t done, size_t total, void* user);
typedef void (*coex_sweep_progress_fn)(size_t point, size_t points, size_t done, size_t total, void* user);

COEX_API const char* coex_version(void);

/* Message of the last failed call on this thread, or "" if none. */
COEX_API const char* coex_last_error(void);

/* Configuration. A fresh config holds the built-in defaults. */
COEX_API coex_status coex_config_new(coex_config** out);
COEX_API coex_status coex_config_load(const char* path, coex_config** out);
COEX_API coex_status coex_config_parse(const char* text, const char* base_dir, coex_config** out);
COEX_API coex_status coex_config_set(coex_config* cfg, const char* key, const char* value);

/* Copies the value into buf. *needed receives the length including the
   terminator; a too-small buf fails with COEX_INVALID_ARGUMENT. */
COEX_API coex_status coex_config_get(const coex_config* cfg, const char* key, char* buf, size_t buf_size,
                                     size_t* needed);

/* "key = value" lines for every key, one per line. Same buffer rules. */
COEX_API coex_status coex_config_echo(const coex_config* cfg, char* buf, size_t buf_size, size_t* needed);

/* Checks cross-key constraints and loads referenced table files. */
COEX_API coex_status coex_config_validate(coex_config* cfg);
COEX_API void coex_config_free(coex_config* cfg);

COEX_API coex_status coex_campaign_run(const coex_config* cfg, coex_progress_fn progress, void* user,
                                       coex_campaign** out);
COEX_API size_t coex_campaign_size(const coex_campaign* c);

/* Writes per_ap.csv, summary.json and ccdf.csv. */
COEX_API coex_status coex_campaign_write(const coex_campaign* c, const char* out_dir);
COEX_API void coex_campaign_free(coex_campaign* c);

/* Baseline is ignored for unfairness. */
COEX_API coex_status coex_series_new(const coex_campaign* c, coex_metric metric, coex_baseline baseline,
                                     coex_series** out);
COEX_API size_t coex_series_size(const coex_series* s);
COEX_API const double* coex_series_samples(const coex_series* s);
COEX_API coex_status coex_series_percentile(const coex_series* s, double p, double* out);

/* Survival probability P(X > value) of the empirical distribution. */
COEX_API coex_status coex_series_ccdf(const coex_series* s, double value, double* out);
COEX_API size_t coex_series_excluded_zero_baseline(const coex_series* s);
COEX_API size_t coex_series_excluded_all_zero(const coex_series* s);
COEX_API const char* coex_series_label(const coex_series* s);
COEX_API void coex_series_free(coex_series* s);

/* Writes one ccdf CSV per sweep point and summary.json into out_dir. */
COEX_API coex_status coex_sweep(const coex_config* cfg, const char* out_dir, coex_sweep_progress_fn progress,
                                void* user);

/* Re-derives ccdf.csv from run_dir/per_ap.csv into out_dir. */
COEX_API coex_status coex_chart(const char* run_dir, const char* out_dir);

/* Formula helpers. */
COEX_API double coex_acir_db(double aclr_db, double acs_db);
COEX_API double coex_noise_floor_dbm(double noise_density_dbm_hz, double bandwidth_hz, double noise_figure_db);

/* Jain index of n values; fails if n is 0 or every value is 0. */
COEX_API coex_status coex_jain(const double* values, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif
