/* C interface to the shavok library. All functions return a status code;
 * shv_last_error() describes the most recent failure on the calling thread. */
#ifndef SHAVOK_SHAVOK_H
#define SHAVOK_SHAVOK_H

#include <stddef.h>

#if defined(SHV_BUILDING_LIB)
#define SHV_API __attribute__((visibility("default")))
#else
#define SHV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shv_status {
  SHV_OK = 0,
  SHV_ERR_INTERNAL = 1,
  SHV_ERR_CONFIG = 2,    /* invalid argument or configuration */
  SHV_ERR_DATA = 3,      /* unusable input data */
  SHV_ERR_NUMERICAL = 4, /* rank deficiency, divergence, non-convergence */
  SHV_ERR_IO = 5
} shv_status;

typedef struct shv_series shv_series;
typedef struct shv_model shv_model;

typedef enum shv_method { SHV_METHOD_HAVOK = 0, SHV_METHOD_SHAVOK = 1 } shv_method;
typedef enum shv_derivative { SHV_DERIV_FORWARD = 0, SHV_DERIV_CENTRAL = 1 } shv_derivative;

typedef struct shv_fit_config {
  size_t delays;
  size_t rank;
  double dt; /* 0 uses the series step */
  int centering;
  int forcing;
  shv_method method;
  shv_derivative derivative;
  int center_per_half;
  double rank_tolerance;
} shv_fit_config;

typedef struct shv_structure {
  double antisymmetry;
  double tridiagonality;
  double offband_max;
} shv_structure;

SHV_API const char* shv_last_error(void);
SHV_API const char* shv_status_string(shv_status status);
SHV_API const char* shv_version(void);

SHV_API void shv_fit_config_init(shv_fit_config* cfg);
/* Fit settings recommended for a preset. */
SHV_API shv_status shv_fit_config_for_preset(const char* preset, shv_fit_config* cfg);

/* Series */
SHV_API shv_status shv_series_from_preset(const char* name, shv_series** out);
SHV_API shv_status shv_series_from_csv(const char* path, shv_series** out);
SHV_API shv_status shv_series_from_values(double t0, double dt, const double* values, size_t n,
                                          shv_series** out);
SHV_API shv_status shv_series_resample(const shv_series* s, double dt_new, shv_series** out);
SHV_API size_t shv_series_length(const shv_series* s);
SHV_API double shv_series_dt(const shv_series* s);
SHV_API double shv_series_t0(const shv_series* s);
/* Copies min(n, length) samples. */
SHV_API size_t shv_series_values(const shv_series* s, double* out, size_t n);
SHV_API shv_status shv_series_write_csv(const shv_series* s, const char* path);
SHV_API void shv_series_free(shv_series* s);

/* Models */
SHV_API shv_status shv_model_fit(const shv_series* s, const shv_fit_config* cfg, shv_model** out);
SHV_API shv_status shv_model_load_json(const char* path, shv_model** out);
SHV_API shv_status shv_model_write_json(const shv_model* m, const char* path);
SHV_API size_t shv_model_state_dim(const shv_model* m);
SHV_API int shv_model_has_forcing(const shv_model* m);
/* Row-major copy of A (continuous) into out[state_dim * state_dim]. */
SHV_API shv_status shv_model_a(const shv_model* m, double* out);
SHV_API shv_status shv_model_a_discrete(const shv_model* m, double* out);
/* B (continuous) into out[state_dim]; CONFIG error for unforced models. */
SHV_API shv_status shv_model_b(const shv_model* m, double* out);
/* Continuous eigenvalues into re[state_dim], im[state_dim]. */
SHV_API shv_status shv_model_spectrum(const shv_model* m, double* re, double* im);
SHV_API shv_status shv_model_structure(const shv_model* m, shv_structure* out);
/* Speed-normalized superdiagonal into out[state_dim - 1]; needs a centered fit. */
SHV_API shv_status shv_model_curvatures(const shv_model* m, double* out);
SHV_API void shv_model_free(shv_model* m);

/* Mean matched distance between the continuous spectra of two models. */
SHV_API shv_status shv_spectrum_distance(const shv_model* a, const shv_model* b, double* mean,
                                         double* max_real_a, double* max_real_b);

/* Full pipeline. dt_resample <= 0 disables resampling. */
SHV_API shv_status shv_run_pipeline(const char* input, const shv_fit_config* cfg,
                                    double dt_resample, int trim_edges, const char* out_dir);

/* Simulate a preset and write its full state trajectory as CSV (time, state columns). */
SHV_API shv_status shv_simulate_preset(const char* name, const char* path);

/* Structure sweep over the default step and column grids on a preset; writes JSON.
 * A NULL cfg uses the default sweep fit (51 delays, rank 5, no forcing). */
SHV_API shv_status shv_run_sweep(const char* preset, const shv_fit_config* cfg,
                                 const char* json_path);

/* Run a named scenario ("1".."10" or its name). *passed receives 1 or 0.
 * summary is filled with a NUL-terminated line if summary_len > 0.
 * json_path may be NULL. */
SHV_API shv_status shv_reproduce(const char* name, int* passed, char* summary,
                                 size_t summary_len, const char* json_path);
SHV_API size_t shv_scenario_count(void);
SHV_API const char* shv_scenario_name(size_t index);

#ifdef __cplusplus
}
#endif

#endif
