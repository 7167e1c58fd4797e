#ifndef BHC_H
#define BHC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum BhcStatus {
  BHC_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  BHC_STATUS_NULL_ARGUMENT = 1,
  /**
   * Input text was not valid UTF-8.
   */
  BHC_STATUS_INVALID_UTF8 = 2,
  /**
   * Instance or argument failed to parse or validate.
   */
  BHC_STATUS_PARSE = 3,
  /**
   * The solver declined the instance (limits, wrong class).
   */
  BHC_STATUS_REFUSED = 4,
  /**
   * Internal consistency failure; report a bug.
   */
  BHC_STATUS_INTERNAL = 5,
  /**
   * Unknown algorithm name.
   */
  BHC_STATUS_UNKNOWN_ALGO = 6,
} BhcStatus;

/**
 * An immutable parsed instance.
 */
typedef struct BhcInstance BhcInstance;

/**
 * A found center and radius.
 */
typedef struct BhcSolution BhcSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The most recent error message on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *bhc_last_error(void);

/**
 * Parse the canonical instance text format. On success stores a handle
 * in `out`; free it with [`bhc_instance_free`].
 *
 * # Safety
 * `text` must be a valid NUL-terminated C string and `out` a valid
 * pointer.
 */
enum BhcStatus bhc_instance_parse(const char *text, struct BhcInstance **out);

/**
 * # Safety
 * `inst` must come from [`bhc_instance_parse`] and not be freed twice.
 */
void bhc_instance_free(struct BhcInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle.
 */
uint32_t bhc_instance_dim(const struct BhcInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle.
 */
uintptr_t bhc_instance_num_blues(const struct BhcInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle.
 */
uintptr_t bhc_instance_num_reds(const struct BhcInstance *inst);

/**
 * Maximum number of ones in any vector.
 *
 * # Safety
 * `inst` must be a live handle.
 */
uint32_t bhc_instance_data_conciseness(const struct BhcInstance *inst);

/**
 * Serialize back to the canonical text format; the returned string must
 * be released with [`bhc_string_free`].
 *
 * # Safety
 * `inst` must be a live handle.
 */
char *bhc_instance_write(const struct BhcInstance *inst);

/**
 * # Safety
 * `s` must come from this library.
 */
void bhc_string_free(char *s);

/**
 * Check a center (given by its support) and radius against an instance.
 * Writes 1 into `out` if the ball separates, 0 otherwise.
 *
 * # Safety
 * `support` must point to `support_len` readable coordinates; other
 * pointers must be valid.
 */
enum BhcStatus bhc_verify(const struct BhcInstance *inst,
                          const uint32_t *support,
                          uintptr_t support_len,
                          uint32_t radius,
                          int32_t *out);

/**
 * Solve with the named algorithm (`brute`, `bounded`, `ilp`, `csp3`,
 * `branch-blue`, `branch-red`, `branch-scp`, `treewidth`). `budget` is
 * the conciseness budget for the bounded solvers, -1 otherwise. On a YES
 * answer `*out` holds a solution handle, on NO it is null.
 *
 * # Safety
 * All pointers must be valid; `algo` must be NUL-terminated.
 */
enum BhcStatus bhc_solve(const struct BhcInstance *inst,
                         const char *algo,
                         int64_t budget,
                         struct BhcSolution **out);

/**
 * # Safety
 * `sol` must come from [`bhc_solve`] and not be freed twice.
 */
void bhc_solution_free(struct BhcSolution *sol);

/**
 * # Safety
 * `sol` must be a live handle.
 */
uint32_t bhc_solution_radius(const struct BhcSolution *sol);

/**
 * Number of ones in the center.
 *
 * # Safety
 * `sol` must be a live handle.
 */
uint32_t bhc_solution_conciseness(const struct BhcSolution *sol);

/**
 * Copy the center's support into `buf` (up to `cap` coordinates) and
 * return the support size. Call with `cap = 0` to query the size.
 *
 * # Safety
 * `buf` must point to `cap` writable slots (or be null when `cap` is 0).
 */
uintptr_t bhc_solution_center(const struct BhcSolution *sol, uint32_t *buf, uintptr_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BHC_H */
