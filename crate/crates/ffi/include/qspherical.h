#ifndef QSPHERICAL_H
#define QSPHERICAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QsClassKind {
  QS_CLASS_KIND_PRINCIPAL = 0,
  QS_CLASS_KIND_COMPLEMENTARY = 1,
  QS_CLASS_KIND_CHARACTER = 2,
  QS_CLASS_KIND_NOT_UNITARIZABLE = 3,
} QsClassKind;

typedef enum QsReason {
  QS_REASON_NONE = 0,
  QS_REASON_NO_INVARIANT_FORM = 1,
  QS_REASON_FORM_INDEFINITE = 2,
  QS_REASON_NORM_BOUND_VIOLATED = 3,
} QsReason;

typedef enum QsStatus {
  QS_STATUS_OK = 0,
  QS_STATUS_ARGUMENT = 1,
  QS_STATUS_SINGULAR = 2,
  QS_STATUS_TRUNCATION = 3,
  QS_STATUS_CONSISTENCY = 4,
  QS_STATUS_NULL_POINTER = 5,
  QS_STATUS_BUFFER_TOO_SMALL = 6,
  QS_STATUS_PANIC = 7,
} QsStatus;

/**
 * Opaque deformation context.
 */
typedef struct QsContext QsContext;

/**
 * Opaque truncated principal-series model.
 */
typedef struct QsModel QsModel;

typedef struct QsComplex {
  double re;
  double im;
} QsComplex;

/**
 * `t` and `s` are only meaningful for `QS_CLASS_KIND_COMPLEMENTARY`.
 */
typedef struct QsClassification {
  enum QsClassKind kind;
  enum QsReason reason;
  double t;
  double s;
} QsClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL, or
 * 0 if there is no error. `buf` may be null to query the length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t qs_last_error(char *buf, size_t len);

/**
 * `tol <= 0` selects the default tolerance.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QsStatus qs_context_new(double q, double tol, struct QsContext **out);

/**
 * # Safety
 * `ctx` must be null or come from `qs_context_new` and not be freed twice.
 */
void qs_context_free(struct QsContext *ctx);

/**
 * # Safety
 * `ctx` and `out` must be valid pointers.
 */
enum QsStatus qs_classify_su2(const struct QsContext *ctx,
                              struct QsComplex nu,
                              struct QsClassification *out);

/**
 * `nu` points to three coordinates summing to zero.
 *
 * # Safety
 * `ctx` and `out` must be valid; `nu` must point to 3 values.
 */
enum QsStatus qs_classify_su3(const struct QsContext *ctx,
                              const struct QsComplex *nu,
                              struct QsClassification *out);

/**
 * Closed-form intertwiner eigenvalue `T^s(ν)`.
 *
 * # Safety
 * `ctx` and `out` must be valid pointers.
 */
enum QsStatus qs_intertwiner_closed_form(const struct QsContext *ctx,
                                         struct QsComplex nu,
                                         uint32_t s,
                                         struct QsComplex *out);

/**
 * Least-squares intertwiner on the model truncated at `s_max`. Writes the
 * values for `s = 0..` into `out` (capacity `cap`) and their count into
 * `written`. If `cap` is too small nothing is written, `written` holds the
 * required count and the status is `QS_STATUS_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `ctx` and `written` must be valid; `out` must point to `cap` values.
 */
enum QsStatus qs_intertwiner_numeric(const struct QsContext *ctx,
                                     struct QsComplex nu,
                                     uint32_t s_max,
                                     struct QsComplex *out,
                                     size_t cap,
                                     size_t *written);

/**
 * # Safety
 * All pointers must be valid.
 */
enum QsStatus qs_fiber_dimension(const struct QsContext *ctx, double dim, bool *allowed, double *t);

/**
 * Quantum and classical dimension of the `SU_q(n)` irreducible with
 * partition `parts[0..len]` (length `n`, last entry 0, or `n − 1`).
 *
 * # Safety
 * `ctx`, `qdim_out` and `dim_out` must be valid; `parts` must point to `len` values.
 */
enum QsStatus qs_qdim(const struct QsContext *ctx,
                      size_t n,
                      const uint32_t *parts,
                      size_t len,
                      double *qdim_out,
                      uint64_t *dim_out);

/**
 * Build the truncated principal series `L(0,ν)` with spins `≤ s_max`.
 *
 * # Safety
 * `ctx` and `out` must be valid pointers.
 */
enum QsStatus qs_model_new(const struct QsContext *ctx,
                           struct QsComplex nu,
                           uint32_t s_max,
                           struct QsModel **out);

/**
 * # Safety
 * `model` must be null or come from `qs_model_new` and not be freed twice.
 */
void qs_model_free(struct QsModel *model);

/**
 * Dimension of the truncated space, `(s_max + 1)²`. Returns 0 for null.
 *
 * # Safety
 * `model` must be null or valid.
 */
size_t qs_model_dim(const struct QsModel *model);

/**
 * Entry `(row, col)` of generator `gen` (0 = a, 1 = b, 2 = c, 3 = d).
 *
 * # Safety
 * `model` and `out` must be valid pointers.
 */
enum QsStatus qs_model_entry(const struct QsModel *model,
                             uint32_t gen,
                             size_t row,
                             size_t col,
                             struct QsComplex *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSPHERICAL_H */
