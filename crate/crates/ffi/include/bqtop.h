/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#ifndef BQTOP_H
#define BQTOP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum {
  BQ_STATUS_OK = 0,
  /**
   * The report was produced and one of its verdicts failed.
   */
  BQ_STATUS_VERDICT_FAILED = 1,
  /**
   * Syntax errors, malformed quivers, relations or maps, unknown names.
   */
  BQ_STATUS_INVALID_INPUT = 2,
  BQ_STATUS_NULL_POINTER = 3,
  BQ_STATUS_INVALID_UTF8 = 4,
  BQ_STATUS_NOT_A_COVERING = 5,
  BQ_STATUS_NOT_GALOIS = 6,
  BQ_STATUS_NO_SEMI_NORMED_BASIS = 7,
  /**
   * The input is outside what the computation handles.
   */
  BQ_STATUS_UNSUPPORTED = 8,
  BQ_STATUS_IO = 9,
  BQ_STATUS_PANIC = 10,
} BqStatus;

/**
 * A parsed bound quiver with its path table and homotopy classes.
 */
typedef struct BqQuiver BqQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library as a static NUL-terminated string.
 */
const char *bq_version(void);

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call on the same thread.
 */
const char *bq_last_error(void);

/**
 * Parses `.bq` text. `name` labels the input in reports and may be null.
 *
 * # Safety
 * `text` and `name` must be null or NUL-terminated; `out` must be writable.
 */
BqStatus bq_quiver_parse(const char *text, const char *name, BqQuiver **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `q` must come from [`bq_quiver_parse`] and not be used afterwards.
 */
void bq_quiver_free(BqQuiver *q);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void bq_string_free(char *s);

/**
 * Writes up to `cap` cell counts of ℬ (or ℬ♯ when `sharp`) into `counts`
 * and the number of dimensions into `len`.
 *
 * # Safety
 * `q` must be a live handle, `counts` must hold `cap` entries (or be null
 * with `cap` zero) and `len` must be writable.
 */
BqStatus bq_cell_counts(const BqQuiver *q, bool sharp, size_t *counts, size_t cap, size_t *len);

/**
 * Cellular (co)homology as JSON. `coefficient` is `Z`, `Q`, `Fp:<p>` or
 * `Zmod:<m>`; null means `Z`.
 *
 * # Safety
 * `q` must be a live handle, `coefficient` null or NUL-terminated and
 * `out` writable.
 */
BqStatus bq_homology_json(const BqQuiver *q,
                          const char *coefficient,
                          bool sharp,
                          bool cohomology,
                          char **out);

/**
 * Runs a report by name: `check`, `cells`, `pi1`, `simplicial`,
 * `hochschild` or `compare`. Returns `VerdictFailed` with the report
 * written when a verdict fails.
 *
 * # Safety
 * `q` must be a live handle, `command` NUL-terminated and `out` writable.
 */
BqStatus bq_report_json(const BqQuiver *q, const char *command, char **out);

/**
 * Verifies that `morphism` (a `.map` text) is a covering from `cover` to
 * `base`. `group` (a `.group` text) adds the Galois and deck checks;
 * `base_point` names the base vertex for the deck check. Both may be null.
 *
 * # Safety
 * Handles must be live, strings null or NUL-terminated as documented and
 * `out` writable.
 */
BqStatus bq_cover_verify_json(const BqQuiver *base,
                              const BqQuiver *cover,
                              const char *morphism,
                              const char *group,
                              const char *base_point,
                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BQTOP_H */
