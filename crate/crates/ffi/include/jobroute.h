#ifndef JOBROUTE_H
#define JOBROUTE_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  JR_STATUS_OK = 0,
  JR_STATUS_NULL_POINTER = 1,
  JR_STATUS_INVALID_ARGUMENT = 2,
  JR_STATUS_IO = 3,
  JR_STATUS_PARSE = 4,
  /**
   * The exact oracle refused the instance.
   */
  JR_STATUS_ORACLE = 5,
  /**
   * A schedule broke a constraint of its instance.
   */
  JR_STATUS_INVALID = 6,
  JR_STATUS_PANIC = 7,
} JrStatus;

typedef enum {
  JR_GRAPH_FORMAT_EDGE_LIST = 0,
  JR_GRAPH_FORMAT_OLDENBURG = 1,
  JR_GRAPH_FORMAT_MTX = 2,
} JrGraphFormat;

typedef enum {
  JR_METRICS_MODE_ON_DEMAND = 0,
  JR_METRICS_MODE_FULL_APSP = 1,
} JrMetricsMode;

typedef enum {
  JR_ALGORITHM_BFS = 0,
  JR_ALGORITHM_NN = 1,
  JR_ALGORITHM_RANDOM = 2,
  JR_ALGORITHM_UGREEDY = 3,
  JR_ALGORITHM_ORACLE = 4,
} JrAlgorithm;

typedef struct JrInstance JrInstance;

typedef struct JrMetrics JrMetrics;

typedef struct JrNetwork JrNetwork;

typedef struct JrSchedule JrSchedule;

/**
 * Generator parameters. Start from [`jr_gen_params_default`].
 * A NaN `budget` or `window_start` means "use the default".
 */
typedef struct {
  double t_min;
  double t_max;
  double util_min;
  double util_max;
  double dur_min;
  double dur_max;
  double budget;
  double window_start;
  double window_end;
  bool has_worker_start;
  uint64_t worker_start;
} JrGenParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *jr_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *jr_version(void);

/**
 * Free a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void jr_string_free(char *s);

/**
 * # Safety
 * `path` is a NUL-terminated UTF-8 string; `out` is writable.
 */
JrStatus jr_network_load(const char *path, JrGraphFormat format, JrNetwork **out);

/**
 * Build a network from `len` undirected edges `(us[i], vs[i], weights[i])`.
 *
 * # Safety
 * The three arrays hold at least `len` elements; `out` is writable.
 */
JrStatus jr_network_from_edges(const uint64_t *us, const uint64_t *vs, const double *weights, size_t len, JrNetwork **out);

/**
 * Number of POIs, or 0 for NULL.
 *
 * # Safety
 * `net` is NULL or a live handle.
 */
size_t jr_network_poi_count(const JrNetwork *net);

/**
 * Number of undirected edges, or 0 for NULL.
 *
 * # Safety
 * `net` is NULL or a live handle.
 */
size_t jr_network_edge_count(const JrNetwork *net);

/**
 * # Safety
 * `net` is NULL or a live handle, not used afterwards.
 */
void jr_network_free(JrNetwork *net);

/**
 * Travel metrics over `net`. The network handle may be freed afterwards.
 *
 * # Safety
 * `net` is a live handle; `out` is writable.
 */
JrStatus jr_metrics_new(const JrNetwork *net, double time_factor, JrMetricsMode mode, JrMetrics **out);

/**
 * Shortest-path cost between two POIs given by their file labels.
 * Unreachable pairs give `INFINITY`.
 *
 * # Safety
 * `metrics` is a live handle; `out` is writable.
 */
JrStatus jr_metrics_cost(const JrMetrics *metrics, uint64_t from_label, uint64_t to_label, double *out);

/**
 * # Safety
 * `metrics` is NULL or a live handle, not used afterwards.
 */
void jr_metrics_free(JrMetrics *metrics);

/**
 * Default generator parameters.
 */
JrGenParams jr_gen_params_default(void);

/**
 * Generate `jobs` random jobs and a worker. `params` may be NULL for the
 * defaults.
 *
 * # Safety
 * `metrics` is a live handle; `params` is NULL or readable; `out` is writable.
 */
JrStatus jr_instance_generate(const JrMetrics *metrics, size_t jobs, uint64_t seed, const JrGenParams *params, JrInstance **out);

/**
 * Load an instance file. `graph_path` may be NULL to use the graph recorded
 * in the file; otherwise it is read with `graph_format`.
 *
 * # Safety
 * `path` and `graph_path` are NUL-terminated strings (`graph_path` may be
 * NULL); `out` is writable.
 */
JrStatus jr_instance_load(const char *path, const char *graph_path, JrGraphFormat graph_format, JrMetricsMode mode, JrInstance **out);

/**
 * # Safety
 * `inst` is a live handle; `path` is a NUL-terminated string.
 */
JrStatus jr_instance_save(const JrInstance *inst, const char *path);

/**
 * Number of jobs, or 0 for NULL.
 *
 * # Safety
 * `inst` is NULL or a live handle.
 */
size_t jr_instance_job_count(const JrInstance *inst);

/**
 * Worker budget, or NaN for NULL.
 *
 * # Safety
 * `inst` is NULL or a live handle.
 */
double jr_instance_budget(const JrInstance *inst);

/**
 * # Safety
 * `inst` is NULL or a live handle, not used afterwards.
 */
void jr_instance_free(JrInstance *inst);

/**
 * Run one algorithm. `seed` drives the random baseline only.
 *
 * # Safety
 * `inst` is a live handle; `out` is writable.
 */
JrStatus jr_solve(const JrInstance *inst, JrAlgorithm algorithm, uint64_t seed, JrSchedule **out);

/**
 * # Safety
 * `s` is NULL or a live handle.
 */
size_t jr_schedule_job_count(const JrSchedule *s);

/**
 * # Safety
 * `s` is NULL or a live handle.
 */
double jr_schedule_total_utility(const JrSchedule *s);

/**
 * # Safety
 * `s` is NULL or a live handle.
 */
double jr_schedule_total_travel_cost(const JrSchedule *s);

/**
 * Copy up to `cap` job ids in execution order into `ids`; the full count is
 * written to `len`. Pass `cap = 0` to query the length.
 *
 * # Safety
 * `s` is a live handle; `ids` holds `cap` elements (may be NULL if `cap` is
 * 0); `len` is writable.
 */
JrStatus jr_schedule_job_ids(const JrSchedule *s, uint32_t *ids, size_t cap, size_t *len);

/**
 * Replay `s` against `inst`. Returns `JR_STATUS_INVALID` with the
 * violations in the error message if any constraint is broken.
 *
 * # Safety
 * Both handles are live.
 */
JrStatus jr_schedule_validate(const JrInstance *inst, const JrSchedule *s);

/**
 * The schedule as a JSON schedule file. Free with [`jr_string_free`].
 *
 * # Safety
 * Both handles are live and `s` was solved on `inst`; `out` is writable.
 */
JrStatus jr_schedule_to_json(const JrInstance *inst, const JrSchedule *s, char **out);

/**
 * # Safety
 * `s` is NULL or a live handle, not used afterwards.
 */
void jr_schedule_free(JrSchedule *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JOBROUTE_H */
