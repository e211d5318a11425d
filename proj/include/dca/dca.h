#ifndef DCA_DCA_H
#define DCA_DCA_H

/*
 * C interface to the discrete convexity toolkit. Instances (lattice sets,
 * table functions, quadratic forms) and reports are opaque handles; all
 * structured data crosses the boundary as JSON text. Every entry point
 * returns a status code and leaves a diagnostic in dca_last_error() on
 * failure. Handles are freed with the matching *_free function; strings
 * returned through char** are freed with dca_string_free.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dca_status {
  DCA_OK = 0,
  DCA_ERR_INVALID_ARGUMENT = 1, /* bad parameter or violated operation input contract */
  DCA_ERR_PARSE = 2,            /* malformed JSON or instance/params shape */
  DCA_ERR_DIM_LIMIT = 3,        /* instance dimension exceeds DCA_MAX_DIM */
  DCA_ERR_PRECONDITION = 4,     /* instance kind does not fit the requested operation */
  DCA_ERR_INTERNAL = 5          /* invariant breach; always a bug, never user error */
} dca_status;

typedef struct dca_instance dca_instance;
typedef struct dca_report dca_report;

const char* dca_version(void);

/* Thread-local message for the most recent failure; empty when the last
 * call on this thread succeeded. The pointer stays valid until the next
 * API call on the same thread. */
const char* dca_last_error(void);

void dca_string_free(char* s);

/* Instance files: kind "set" (points), "function" (box + row-major
 * values, rationals as "p/q" strings and +infinity as null), or
 * "quadratic" (matrix + y_block). The environment variable DCA_MAX_DIM
 * (default 6) bounds the accepted dimension. */
dca_status dca_instance_from_json(const char* json_text, dca_instance** out);
dca_status dca_instance_from_file(const char* path, dca_instance** out);
dca_status dca_instance_to_json(const dca_instance* instance, char** out_json);
void dca_instance_free(dca_instance* instance);

/*
 * Runs one membership check. name is one of:
 *   integrally-convex-set, dmc-set, lnat-set            (set instances)
 *   integrally-convex-fn, midpoint-fn, submodular-fn,
 *   lnat-fn, separable-fn, parallelogram, argmin-ic,
 *   chain                                               (function instances)
 *   quadratic                                           (quadratic instances)
 * options_json may be NULL or an object with optional keys:
 *   "mode":   "all" | "global" | "local"   (midpoint-fn; parallelogram
 *             accepts global/local, default global)
 *   "probes": integer >= 1                 (argmin-ic, default 16)
 *   "seed":   unsigned integer             (argmin-ic, default 1)
 * Each produced witness is replayed against the raw instance before the
 * report is returned; a replay failure is reported as DCA_ERR_INTERNAL.
 */
dca_status dca_check(const dca_instance* instance, const char* name,
                     const char* options_json, dca_report** out);

/*
 * Runs one transform. name is one of: project-set, project-fn, minkowski,
 * convolve, conjugate, penalty, extend, add, minimize, segment-certificate.
 * inputs is an array of n_inputs operand handles (two for minkowski,
 * convolve, add; one otherwise). params_json carries the
 * operation-specific parameters:
 *   project-set / project-fn: {"keep": [axis indices]}
 *   conjugate:                {"box": {"lo": [...], "hi": [...]}}
 *   penalty:                  {"box": ..., "metric": "l1" | "squared-l2",
 *                              "weight": "p/q"}
 *   extend:                   {"box": ..., "metric": ..., "weight": ...}
 *   segment-certificate:      {"axis": i, "lo": a, "hi": b, "x": ["p/q", ...]}
 * out receives the result instance for instance-producing transforms and
 * NULL for minimize / segment-certificate; out_report always receives a
 * JSON report of the operation (minimum point and value, certificate
 * detail, extension threshold, ...). Either out pointer may be NULL if the
 * caller does not need that half.
 */
dca_status dca_transform(const dca_instance* const* inputs, size_t n_inputs,
                         const char* name, const char* params_json,
                         dca_instance** out, dca_report** out_report);

/* Runs the embedded example pipelines. options_json may be NULL or
 * {"only": "ex43", "negative_control": false}; the negative control
 * corrupts one pinned expectation to prove the harness flags mismatches. */
dca_status dca_run_examples(const char* options_json, dca_report** out);

dca_status dca_report_to_json(const dca_report* report, char** out_json);

/* 1 when every verdict (or example match, or certificate) in the report
 * came out positive, 0 otherwise. */
int dca_report_all_true(const dca_report* report);
void dca_report_free(dca_report* report);

#ifdef __cplusplus
}
#endif

#endif /* DCA_DCA_H */
