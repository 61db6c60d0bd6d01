#ifndef BOUR_H
#define BOUR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BourStatus {
  BOUR_STATUS_OK = 0,
  /**
   * A pair was evaluated but at least one verdict disagrees with its
   * expectation.
   */
  BOUR_STATUS_VERDICT_FAILED = 1,
  BOUR_STATUS_INVALID_INPUT = 2,
  BOUR_STATUS_NUMERICAL_FAILURE = 3,
  BOUR_STATUS_NULL_POINTER = 4,
  BOUR_STATUS_PANIC = 5,
} BourStatus;

/**
 * Parsed profile expression in `u`.
 */
typedef struct BourExpr BourExpr;

/**
 * Helicoidal (or, at zero pitch, rotational) surface.
 */
typedef struct BourHelicoid BourHelicoid;

typedef struct BourCurvatures {
  double k;
  double h1;
  double h2;
  /**
   * Largest component of the mean curvature vector.
   */
  double hvec_max;
  /**
   * `EG - F^2` of the induced metric.
   */
  double w;
  bool minimal;
} BourCurvatures;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *bour_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void bour_string_free(char *s);

/**
 * `<x, y>` with signature `(+, +, +, -)`; NaN if either pointer is null.
 *
 * # Safety
 * `x` and `y` must each point to 4 doubles.
 */
double bour_minkowski_dot(const double *x, const double *y);

/**
 * Components of `x ∧ y` in the order 12, 13, 14, 23, 24, 34.
 *
 * # Safety
 * `x` and `y` must point to 4 doubles, `out` to 6 writable doubles.
 */
enum BourStatus bour_wedge(const double *x, const double *y, double *out);

/**
 * # Safety
 * `src` must be a NUL-terminated string and `out` a writable pointer.
 */
enum BourStatus bour_expr_parse(const char *src, struct BourExpr **out);

/**
 * Value and first two derivatives at `u`. Expressions naming constants
 * other than `u` fail here.
 *
 * # Safety
 * `e` must be a live handle; `out` must point to 3 writable doubles.
 */
enum BourStatus bour_expr_eval(const struct BourExpr *e, double u, double *out);

/**
 * # Safety
 * `e` must be null or a handle from [`bour_expr_parse`], not yet freed.
 */
void bour_expr_free(struct BourExpr *e);

/**
 * Builds a surface from the same JSON accepted by `bour report --spec`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum BourStatus bour_helicoid_from_json(const char *json, struct BourHelicoid **out);

/**
 * # Safety
 * `h` must be null or a handle from [`bour_helicoid_from_json`], not yet freed.
 */
void bour_helicoid_free(struct BourHelicoid *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must point to 4 writable doubles.
 */
enum BourStatus bour_helicoid_position(const struct BourHelicoid *h,
                                       double u,
                                       double v,
                                       double *out);

/**
 * Unit tangent bivector, components ordered as in [`bour_wedge`].
 *
 * # Safety
 * `h` must be a live handle; `out` must point to 6 writable doubles.
 */
enum BourStatus bour_helicoid_gauss_map(const struct BourHelicoid *h,
                                        double u,
                                        double v,
                                        double *out);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum BourStatus bour_helicoid_curvatures(const struct BourHelicoid *h,
                                         double u,
                                         double v,
                                         struct BourCurvatures *out);

/**
 * Runs the pair check for a pair file (`{"helicoid": .., "gauge": ..}`) on an
 * `nu × nv` grid with default tolerances. The JSON report is written to
 * `report` whenever the pair could be evaluated, including when a verdict
 * fails (`BOUR_STATUS_VERDICT_FAILED`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `report` a writable pointer.
 */
enum BourStatus bour_verify_pair_json(const char *json, size_t nu, size_t nv, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOUR_H */
