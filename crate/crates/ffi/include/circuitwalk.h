#ifndef CIRCUITWALK_H
#define CIRCUITWALK_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Values match the command-line exit codes of `ocnp`.
 */
typedef enum CwOcnpVerdict {
  CW_OCNP_VERDICT_CIRCUIT_NEIGHBOR = 0,
  CW_OCNP_VERDICT_NOT_CIRCUIT_NEIGHBOR = 1,
  CW_OCNP_VERDICT_ALREADY_OPTIMAL = 2,
  CW_OCNP_VERDICT_NOT_UNIQUE = 3,
} CwOcnpVerdict;

/**
 * Result code of every call.
 */
typedef enum CwStatus {
  CW_STATUS_OK = 0,
  CW_STATUS_NULL_POINTER = 1,
  CW_STATUS_INVALID_UTF8 = 2,
  CW_STATUS_PARSE = 3,
  CW_STATUS_DIMENSION = 4,
  CW_STATUS_NOT_POINTED = 5,
  CW_STATUS_INVALID_ARGUMENT = 6,
  CW_STATUS_INFEASIBLE = 7,
  CW_STATUS_UNBOUNDED = 8,
  CW_STATUS_WORK_BUDGET = 9,
  CW_STATUS_ITERATION_CAP = 10,
  CW_STATUS_IO = 11,
  CW_STATUS_PANIC = 12,
} CwStatus;

typedef enum CwStepOutcome {
  CW_STEP_OUTCOME_STEP = 0,
  CW_STEP_OUTCOME_OPTIMAL = 1,
  CW_STEP_OUTCOME_UNBOUNDED_IMPROVEMENT = 2,
} CwStepOutcome;

typedef enum CwStepRule {
  CW_STEP_RULE_EXACT = 0,
  CW_STEP_RULE_APPROX = 1,
  CW_STEP_RULE_STEEPEST = 2,
} CwStepRule;

/**
 * Opaque digraph.
 */
typedef struct CwGraph CwGraph;

/**
 * Opaque LP instance.
 */
typedef struct CwInstance CwInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The caller owns
 * the returned string.
 */
char *cw_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void cw_string_free(char *s);

/**
 * Parses an LP instance in the text format of the command-line tool.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CwStatus cw_instance_parse(const char *source, struct CwInstance **out);

/**
 * # Safety
 * `inst` must be NULL or a handle from this library, not yet freed.
 */
void cw_instance_free(struct CwInstance *inst);

/**
 * Number of variables, or 0 for a NULL handle.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t cw_instance_dim(const struct CwInstance *inst);

/**
 * Writes the instance back in its text format.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum CwStatus cw_instance_format(const struct CwInstance *inst, char **out);

/**
 * Solves the LP. On `CW_STATUS_OK`, `out_point` receives the optimal vertex
 * and `out_value` the optimal value. On `CW_STATUS_UNBOUNDED`, `out_point`
 * receives an improving ray and `out_value` is set to NULL.
 *
 * # Safety
 * `inst` must be a live handle; both outputs must be writable.
 */
enum CwStatus cw_solve(const struct CwInstance *inst, char **out_point, char **out_value);

/**
 * All circuits, one per line in canonical order.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum CwStatus cw_circuits(const struct CwInstance *inst, uint64_t budget, char **out);

/**
 * One circuit step from `from`. For `CW_STEP_OUTCOME_STEP` the circuit,
 * step length and improvement are written; for an unbounded improving
 * circuit only the circuit is; for `CW_STEP_OUTCOME_OPTIMAL` all three are
 * NULL.
 *
 * # Safety
 * `inst` must be a live handle, `from` a NUL-terminated point, and every
 * output writable.
 */
enum CwStatus cw_step(const struct CwInstance *inst,
                      const char *from,
                      enum CwStepRule step_rule,
                      uint64_t budget,
                      enum CwStepOutcome *out_outcome,
                      char **out_circuit,
                      char **out_alpha,
                      char **out_improvement);

/**
 * Decides whether the unique optimum is one circuit step from `from`.
 *
 * # Safety
 * `inst` must be a live handle, `from` a NUL-terminated point and `out`
 * writable.
 */
enum CwStatus cw_ocnp(const struct CwInstance *inst, const char *from, enum CwOcnpVerdict *out);

/**
 * Conformal decomposition of `to - from`, one `alpha | circuit` line per term.
 *
 * # Safety
 * `inst` must be a live handle, both points NUL-terminated and `out`
 * writable.
 */
enum CwStatus cw_decompose(const struct CwInstance *inst,
                           const char *from,
                           const char *to,
                           char **out);

/**
 * Parses a digraph file (`|V| m`, then `tail head [cost]` per arc).
 *
 * # Safety
 * `source` must be NUL-terminated and `out` writable.
 */
enum CwStatus cw_graph_parse(const char *source, struct CwGraph **out);

/**
 * # Safety
 * `g` must be NULL or a handle from this library, not yet freed.
 */
void cw_graph_free(struct CwGraph *g);

/**
 * Builds the perturbed circulation LP of an unweighted digraph. The start
 * point of the reduction is the origin.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CwStatus cw_reduce(const struct CwGraph *g, struct CwInstance **out);

/**
 * Maximum-cost directed cycle as 1-based arc indices separated by spaces,
 * perturbing unit costs first when the graph has none. Both outputs are NULL
 * for an acyclic graph.
 *
 * # Safety
 * `g` must be a live handle and both outputs writable.
 */
enum CwStatus cw_longest_cycle(const struct CwGraph *g,
                               uint64_t budget,
                               char **out_arcs,
                               char **out_cost);

/**
 * Checks that the deepest-descent step of the reduction from the origin is
 * the longest cycle.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CwStatus cw_verify_correspondence(const struct CwGraph *g, uint64_t budget, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIRCUITWALK_H */
