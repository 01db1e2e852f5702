#ifndef PAIRVIS_H
#define PAIRVIS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PvObjective {
  PV_OBJECTIVE_MIN_MAX = 0,
  PV_OBJECTIVE_MIN_SUM = 1,
  /**
   * `max(p1 * d_s, (1 - p1) * d_t)`.
   */
  PV_OBJECTIVE_WEIGHTED_MIN_MAX = 2,
  /**
   * `max(p1 + d_s, p2 + d_t)`.
   */
  PV_OBJECTIVE_OFFSET_MIN_MAX = 3,
} PvObjective;

/**
 * Result codes.
 */
typedef enum PvStatus {
  PV_STATUS_OK = 0,
  PV_STATUS_NULL_POINTER = 1,
  PV_STATUS_INVALID_POLYGON = 2,
  PV_STATUS_OUTSIDE_POLYGON = 3,
  PV_STATUS_INVALID_PARAMETER = 4,
  PV_STATUS_VERSION_MISMATCH = 5,
  PV_STATUS_IO = 6,
  PV_STATUS_INTERNAL = 7,
} PvStatus;

/**
 * A validated polygon with its triangulation.
 */
typedef struct PvPolygon PvPolygon;

/**
 * A preprocessed polygon answering min-max queries.
 */
typedef struct PvQuery PvQuery;

/**
 * A solution. Points are `{x, y}`; the chord is `{ax, ay, bx, by}`.
 */
typedef struct PvSolution {
  double value;
  double s_star[2];
  double t_star[2];
  /**
   * 0 when `s` sees `t`; `chord` and `pivot_index` are then unset.
   */
  int32_t has_chord;
  double chord[4];
  /**
   * Position of the pivot in the shortest path, -1 without a chord.
   */
  int64_t pivot_index;
} PvSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *pv_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *pv_version(void);

/**
 * Builds a polygon from `n` vertices stored as `x0, y0, x1, y1, ...`.
 *
 * # Safety
 * `xy` must point to `2 * n` doubles and `out` to writable storage.
 */
enum PvStatus pv_polygon_new(const double *xy, size_t n, struct PvPolygon **out);

/**
 * Number of vertices.
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
size_t pv_polygon_len(const struct PvPolygon *poly);

/**
 * # Safety
 * `poly` must be null or a handle not yet freed.
 */
void pv_polygon_free(struct PvPolygon *poly);

/**
 * Solves one instance. `kind` is a `PvObjective` value; `p1` and `p2`
 * parametrize the weighted and offset objectives and are ignored
 * otherwise.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum PvStatus pv_solve(const struct PvPolygon *poly,
                       double sx,
                       double sy,
                       double tx,
                       double ty,
                       uint32_t kind,
                       double p1,
                       double p2,
                       struct PvSolution *out);

/**
 * Preprocesses a polygon for min-max queries. The polygon handle stays
 * owned by the caller.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum PvStatus pv_query_build(const struct PvPolygon *poly, struct PvQuery **out);

/**
 * # Safety
 * `q` must be a live handle and `path` a NUL-terminated string.
 */
enum PvStatus pv_query_save(const struct PvQuery *q, const char *path);

/**
 * Loads a saved structure; a different format version is
 * `VersionMismatch`.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum PvStatus pv_query_load(const char *path, struct PvQuery **out);

/**
 * Min-max answer for one pair.
 *
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum PvStatus pv_query_minmax(const struct PvQuery *q,
                              double sx,
                              double sy,
                              double tx,
                              double ty,
                              struct PvSolution *out);

/**
 * # Safety
 * `q` must be null or a handle not yet freed.
 */
void pv_query_free(struct PvQuery *q);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PAIRVIS_H */
