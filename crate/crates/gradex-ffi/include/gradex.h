#ifndef GRADEX_H
#define GRADEX_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes returned by every gradex entry point.
 */
typedef enum GradexStatus {
  /**
   * The call succeeded.
   */
  GRADEX_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  GRADEX_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  GRADEX_STATUS_INVALID_UTF8 = 2,
  /**
   * The input could not be parsed (spec JSON or element grammar).
   */
  GRADEX_STATUS_PARSE = 3,
  /**
   * The spec parsed but violates a structural invariant.
   */
  GRADEX_STATUS_INVALID_SPEC = 4,
  /**
   * An internal error occurred; see the last error message.
   */
  GRADEX_STATUS_INTERNAL = 5,
} GradexStatus;

/**
 * Opaque handle to a fully validated algebra configuration.
 */
typedef struct GradexSpec GradexSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message for the most recent failure on this thread, or null
 * if the last call succeeded. The pointer is valid until the next gradex
 * call on the same thread; do not free it.
 */
const char *gradex_last_error_message(void);

/**
 * Parses a JSON spec document and builds a validated configuration.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GradexStatus gradex_spec_parse_json(const char *json, struct GradexSpec **out);

/**
 * Builds the standard flux configuration on `n` slots.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GradexStatus gradex_spec_flux(uint32_t n, struct GradexSpec **out);

/**
 * Releases a configuration handle. Null is ignored.
 *
 * # Safety
 * `spec` must be null or a pointer previously returned by this library.
 */
void gradex_spec_free(struct GradexSpec *spec);

/**
 * Releases a string previously returned through an out-parameter.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by this library.
 */
void gradex_string_free(char *s);

/**
 * Number of generator slots (the rank of the grading group).
 *
 * # Safety
 * `spec` must be a live handle.
 */
uint32_t gradex_spec_rank(const struct GradexSpec *spec);

/**
 * Rewrites `word` to its normal form and returns the rendered element.
 *
 * # Safety
 * `spec` must be a live handle, `word` NUL-terminated, `out` valid.
 */
enum GradexStatus gradex_normal_form(const struct GradexSpec *spec, const char *word, char **out);

/**
 * Multiplies two elements and returns the product in normal form.
 *
 * # Safety
 * `spec` must be a live handle, both inputs NUL-terminated, `out` valid.
 */
enum GradexStatus gradex_mul(const struct GradexSpec *spec,
                             const char *lhs,
                             const char *rhs,
                             char **out);

/**
 * Runs the realization consistency check and returns a JSON report with
 * the verdict, any excluded generator pairs, and the injectivity flag.
 *
 * # Safety
 * `spec` must be a live handle and `out` a valid pointer.
 */
enum GradexStatus gradex_classify_json(const struct GradexSpec *spec, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRADEX_H */
