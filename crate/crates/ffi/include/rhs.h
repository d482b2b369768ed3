/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef RHS_H
#define RHS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RhsStatus {
  RHS_STATUS_OK = 0,
  RHS_STATUS_NULL_POINTER = 1,
  RHS_STATUS_INVALID_ARGUMENT = 2,
  RHS_STATUS_LEVEL_ORDER = 3,
  RHS_STATUS_OUT_OF_RANGE = 4,
  RHS_STATUS_DIMENSION_MISMATCH = 5,
  RHS_STATUS_LADDER_MISMATCH = 6,
  RHS_STATUS_INSUFFICIENT_DATA = 7,
  RHS_STATUS_COCONE_VIOLATION = 8,
  RHS_STATUS_ALIASING = 9,
  RHS_STATUS_DIAGNOSTIC = 10,
  RHS_STATUS_PANIC = 11,
} RhsStatus;

// A linear functional given by its coefficients.
typedef struct RhsFunctional RhsFunctional;

// A square-summable sequence with a certified tail.
typedef struct RhsHilbert RhsHilbert;

// A ladder of dimensions.
typedef struct RhsLadder RhsLadder;

// An element of one level of a ladder.
typedef struct RhsPhi RhsPhi;

typedef struct RhsComplex {
  double re;
  double im;
} RhsComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call into this library on the same
// thread.
const char *rhs_last_error_message(void);

// Parses `spec` (`identity`, `even`, or a list such as `1:3:7`).
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a writable pointer.
enum RhsStatus rhs_ladder_new(const char *spec, struct RhsLadder **out);

// # Safety
// `ladder` must be null or a handle from [`rhs_ladder_new`] not yet freed.
void rhs_ladder_free(struct RhsLadder *ladder);

// Dimension of `level` (1-based).
//
// # Safety
// `ladder` must be a live handle and `out` writable.
enum RhsStatus rhs_ladder_dim(const struct RhsLadder *ladder, size_t level, size_t *out);

// Element of `level` with `len` coefficients, which must equal the level's
// dimension.
//
// # Safety
// `ladder` must be a live handle, `coeffs` must point to `len` values (or be
// null when `len` is 0), and `out` must be writable.
enum RhsStatus rhs_phi_new(const struct RhsLadder *ladder,
                           size_t level,
                           const struct RhsComplex *coeffs,
                           size_t len,
                           struct RhsPhi **out);

// # Safety
// `phi` must be null or a live handle.
void rhs_phi_free(struct RhsPhi *phi);

// Level the element is stored at, or 0 for a null handle.
//
// # Safety
// `phi` must be null or a live handle.
size_t rhs_phi_level(const struct RhsPhi *phi);

// Smallest level containing the element, or 0 for a null handle.
//
// # Safety
// `phi` must be null or a live handle.
size_t rhs_phi_canonical_level(const struct RhsPhi *phi);

// Number of stored coefficients, or 0 for a null handle.
//
// # Safety
// `phi` must be null or a live handle.
size_t rhs_phi_len(const struct RhsPhi *phi);

// Copies the coefficients into `buf`, which must hold at least
// [`rhs_phi_len`] values.
//
// # Safety
// `phi` must be a live handle and `buf` must point to `cap` writable values.
enum RhsStatus rhs_phi_coeffs(const struct RhsPhi *phi, struct RhsComplex *buf, size_t cap);

// Inclusion into a level at or above the element's own.
//
// # Safety
// `phi` must be a live handle and `out` writable.
enum RhsStatus rhs_phi_include(const struct RhsPhi *phi, size_t level, struct RhsPhi **out);

// `<a, b>`, linear in `a` and conjugate linear in `b`.
//
// # Safety
// `a` and `b` must be live handles and `out` writable.
enum RhsStatus rhs_phi_inner_product(const struct RhsPhi *a,
                                     const struct RhsPhi *b,
                                     struct RhsComplex *out);

// # Safety
// `phi` must be a live handle and `out` writable.
enum RhsStatus rhs_phi_norm(const struct RhsPhi *phi, double *out);

// The sequence `r^(n-1)`, `0 < r < 1`.
//
// # Safety
// `out` must be writable.
enum RhsStatus rhs_hilbert_geometric(double ratio, struct RhsHilbert **out);

// The sequence `n^(-p)`, `p > 1/2`.
//
// # Safety
// `out` must be writable.
enum RhsStatus rhs_hilbert_power(double exponent, struct RhsHilbert **out);

// Embeds a ladder element as a finitely supported sequence.
//
// # Safety
// `phi` must be a live handle and `out` writable.
enum RhsStatus rhs_hilbert_embed(const struct RhsPhi *phi, struct RhsHilbert **out);

// # Safety
// `h` must be null or a live handle.
void rhs_hilbert_free(struct RhsHilbert *h);

// `||x - P_n x||`. For power-law sequences this is a certified upper bound.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum RhsStatus rhs_hilbert_tail_norm(const struct RhsHilbert *h, size_t n, double *out);

// # Safety
// `h` must be a live handle and `out` writable.
enum RhsStatus rhs_hilbert_norm(const struct RhsHilbert *h, double *out);

// `P_n x` as an element of the smallest level of `ladder` with dimension at
// least `n`.
//
// # Safety
// `ladder` and `h` must be live handles and `out` writable.
enum RhsStatus rhs_hilbert_project(const struct RhsLadder *ladder,
                                   const struct RhsHilbert *h,
                                   size_t n,
                                   struct RhsPhi **out);

// Functional with coefficients `coeffs[0..len]` and zero beyond.
//
// # Safety
// `coeffs` must point to `len` values (or be null when `len` is 0) and `out`
// must be writable.
enum RhsStatus rhs_functional_from_coeffs(const struct RhsComplex *coeffs,
                                          size_t len,
                                          struct RhsFunctional **out);

// The functional `f_i = i!`.
//
// # Safety
// `out` must be writable.
enum RhsStatus rhs_functional_factorial(struct RhsFunctional **out);

// The functional `x -> <x, y>`.
//
// # Safety
// `y` must be a live handle and `out` writable.
enum RhsStatus rhs_functional_riesz(const struct RhsPhi *y, struct RhsFunctional **out);

// # Safety
// `f` must be null or a live handle.
void rhs_functional_free(struct RhsFunctional *f);

// # Safety
// `f` and `x` must be live handles and `out` writable.
enum RhsStatus rhs_functional_pair(const struct RhsFunctional *f,
                                   const struct RhsPhi *x,
                                   struct RhsComplex *out);

// Operator norm of the restriction of `f` to `level`.
//
// # Safety
// `f` and `ladder` must be live handles and `out` writable.
enum RhsStatus rhs_functional_restriction_norm(const struct RhsFunctional *f,
                                               const struct RhsLadder *ladder,
                                               size_t level,
                                               double *out);

// `q_k` of a finite coefficient vector.
//
// # Safety
// `coeffs` must point to `len` values (or be null when `len` is 0) and `out`
// must be writable.
enum RhsStatus rhs_seminorm_qk(const struct RhsComplex *coeffs,
                               size_t len,
                               uint32_t k,
                               double *out);

// `int xi^m exp(-xi^2/2) dxi` as a float. When `numer` and `denom` are given
// they receive the exact value divided by `sqrt(2 pi)`; a ratio that does not
// fit in `i64` reports `RHS_STATUS_OUT_OF_RANGE`.
//
// # Safety
// `value` must be writable; `numer` and `denom` may be null.
enum RhsStatus rhs_gaussian_moment(size_t m, double *value, int64_t *numer, int64_t *denom);

// Trapezoid Fourier coefficient `c_n` of a named function (`const`, `cosine`,
// `expcos`, `sawtooth`) on an even grid with `grid > 2|n|`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` writable.
enum RhsStatus rhs_fourier_coeff(const char *name, int64_t n, size_t grid, struct RhsComplex *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RHS_H */
