#ifndef MEDIANWALLS_H
#define MEDIANWALLS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code for every fallible entry point. The numeric values match the
 * CLI exit codes where a counterpart exists.
 */
typedef enum MwStatus {
  /**
   * The call succeeded.
   */
  MwStatus_Ok = 0,
  /**
   * The input was malformed or outside the function's domain.
   */
  MwStatus_InvalidInput = 2,
  /**
   * An enumeration or resource budget was exceeded.
   */
  MwStatus_BudgetExceeded = 3,
  /**
   * A required pointer argument was NULL.
   */
  MwStatus_NullArgument = 4,
} MwStatus;

/**
 * Opaque handle to the median space produced by [`mw_medianize`].
 */
typedef struct MwMedianSpace MwMedianSpace;

/**
 * Opaque handle to a finite space with measured walls.
 */
typedef struct MwWallSpace MwWallSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the error message for the most recent failing call on this
 * thread. The pointer stays valid until the next failing call on the same
 * thread; do not free it.
 */
const char *mw_last_error(void);

/**
 * Releases a string returned by any `*_to_json` function.
 *
 * # Safety
 * `text` must be NULL or a pointer previously returned by this library and
 * not yet freed.
 */
void mw_string_free(char *text);

/**
 * Parses a wall space from its JSON document and writes a new handle to
 * `out`.
 *
 * # Safety
 * `json` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer.
 */
enum MwStatus mw_wallspace_from_json(const char *json, struct MwWallSpace **out);

/**
 * Serializes the wall space back to its JSON document.
 *
 * # Safety
 * `space` must be a live handle from [`mw_wallspace_from_json`].
 */
char *mw_wallspace_to_json(const struct MwWallSpace *space);

/**
 * Releases a wall-space handle.
 *
 * # Safety
 * `space` must be NULL or a live handle; it is invalid afterwards.
 */
void mw_wallspace_free(struct MwWallSpace *space);

/**
 * Number of points in the space; 0 when the handle is NULL.
 *
 * # Safety
 * `space` must be NULL or a live handle.
 */
uintptr_t mw_wallspace_point_count(const struct MwWallSpace *space);

/**
 * Number of walls in the space; 0 when the handle is NULL.
 *
 * # Safety
 * `space` must be NULL or a live handle.
 */
uintptr_t mw_wallspace_wall_count(const struct MwWallSpace *space);

/**
 * Wall pseudo-distance between points `i` and `j`, written to `out` as a
 * double.
 *
 * # Safety
 * `space` must be a live handle and `out` writable storage for one double.
 */
enum MwStatus mw_wallspace_pdist(const struct MwWallSpace *space,
                                 uintptr_t i,
                                 uintptr_t j,
                                 double *out);

/**
 * Builds the median space of `space` and writes a new handle to `out`.
 * `wall_budget` caps the number of walls; pass 0 for the default.
 *
 * # Safety
 * `space` must be a live handle and `out` writable storage for one pointer.
 */
enum MwStatus mw_medianize(const struct MwWallSpace *space,
                           uintptr_t wall_budget,
                           struct MwMedianSpace **out);

/**
 * Number of points in the median space; 0 when the handle is NULL.
 *
 * # Safety
 * `median` must be NULL or a live handle.
 */
uintptr_t mw_median_space_len(const struct MwMedianSpace *median);

/**
 * Distance between median-space points `i` and `j`, written to `out`.
 *
 * # Safety
 * `median` must be a live handle and `out` writable storage for one double.
 */
enum MwStatus mw_median_space_dist(const struct MwMedianSpace *median,
                                   uintptr_t i,
                                   uintptr_t j,
                                   double *out);

/**
 * Index of the median-space point carrying base point `i`.
 *
 * # Safety
 * `median` must be a live handle and `out` writable storage for one usize.
 */
enum MwStatus mw_median_space_embedded(const struct MwMedianSpace *median,
                                       uintptr_t i,
                                       uintptr_t *out);

/**
 * Median space as a distance-matrix JSON document.
 *
 * # Safety
 * `median` must be NULL or a live handle.
 */
char *mw_median_space_to_json(const struct MwMedianSpace *median);

/**
 * Releases a median-space handle.
 *
 * # Safety
 * `median` must be NULL or a live handle; it is invalid afterwards.
 */
void mw_median_space_free(struct MwMedianSpace *median);

/**
 * Runs the full quantitative audit and writes the JSON report to `out`.
 * `wall_budget` caps the number of walls; pass 0 for the default.
 *
 * # Safety
 * `space` must be a live handle and `out` writable storage for one pointer.
 */
enum MwStatus mw_audit_json(const struct MwWallSpace *space, uintptr_t wall_budget, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MEDIANWALLS_H */
