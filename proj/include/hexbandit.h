/* hexbandit — hierarchical experts bandit simulator and bound calculator.
 *
 * C interface of the shared library. All functions return hxb_status unless
 * noted; on failure, hxb_last_error() describes the problem for the calling
 * thread. Handles are opaque and must be released with their _free function.
 * Configuration documents are JSON text; see the project README for the
 * schemas.
 */
#ifndef HEXBANDIT_H
#define HEXBANDIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hxb_status {
  HXB_OK = 0,
  HXB_ERROR = 1,       /* invalid argument / internal failure */
  HXB_ERR_CONFIG = 2,  /* malformed or inconsistent configuration */
  HXB_ERR_IO = 3       /* filesystem failure */
} hxb_status;

typedef struct hxb_sim hxb_sim;     /* validated simulation configuration */
typedef struct hxb_trace hxb_trace; /* one simulated run */

const char* hxb_version(void);

/* Message for the most recent failure on this thread; empty when none. */
const char* hxb_last_error(void);

/* Release a string returned through a char** out-parameter. */
void hxb_string_free(char* s);

/* --- simulation ---------------------------------------------------------- */

/* Parse and validate a simulation config ({"arms":..., "hierarchy":...,
 * "horizon":...}). */
hxb_status hxb_sim_create(const char* config_json, hxb_sim** out);
void hxb_sim_free(hxb_sim* sim);

int hxb_sim_num_layers(const hxb_sim* sim);
int hxb_sim_num_arms(const hxb_sim* sim);
int64_t hxb_sim_horizon(const hxb_sim* sim);

/* Run the configured horizon with the stream derived from `seed`. */
hxb_status hxb_sim_run(const hxb_sim* sim, uint64_t seed, hxb_trace** out);
void hxb_trace_free(hxb_trace* trace);

int64_t hxb_trace_horizon(const hxb_trace* trace);
double hxb_trace_final_regret(const hxb_trace* trace);

/* Cumulative pseudo-regret, horizon+1 values starting at round 0. */
hxb_status hxb_trace_regret_curve(const hxb_trace* trace, double* buf, size_t len);

/* Selector-by-child counts for one boundary (0 = top strategy, R = arms).
 * Dimensions are reported through rows/cols; buf may be NULL to query.
 * With a non-NULL buf of at least rows*cols entries, counts are written
 * row-major. */
hxb_status hxb_trace_selection_matrix(const hxb_trace* trace, int boundary, int64_t* buf,
                                      size_t len, int* rows, int* cols);

/* Write regret_curve.csv, per-layer selection matrices, run.jsonl and
 * regret_curve.svg into out_dir. */
hxb_status hxb_trace_write_outputs(const hxb_trace* trace, const hxb_sim* sim, uint64_t seed,
                                   const char* out_dir);

/* --- closed-form bounds -------------------------------------------------- */

/* Evaluate a bound request ({"bound":"fact1", "arms":..., "n":..., ...}).
 * On success *json_out is the report object and *table_out an aligned text
 * rendering; both are released with hxb_string_free. Either out-parameter
 * may be NULL. */
hxb_status hxb_bounds_report(const char* config_json, char** json_out, char** table_out);

/* --- experiments --------------------------------------------------------- */

/* Run one experiment ("param-inflation", "selection-ranges" or
 * "expert-count") at the requested scale ("desk" or "paper"), writing its
 * artifact files into out_dir. seed may be NULL to use the config seed
 * (default 1). On success *summary_json_out (optional) carries the summary
 * object. */
hxb_status hxb_experiment_run(const char* config_json, const char* kind,
                              const uint64_t* seed, const char* scale, const char* out_dir,
                              char** summary_json_out);

#ifdef __cplusplus
}
#endif

#endif /* HEXBANDIT_H */
