#ifndef NCSYM_H
#define NCSYM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every function.
typedef enum NcsymStatus {
  NCSYM_STATUS_OK = 0,
  // A required pointer argument was null.
  NCSYM_STATUS_NULL_POINTER = 1,
  // Input text is not valid UTF-8.
  NCSYM_STATUS_UTF8 = 2,
  // Expression syntax error.
  NCSYM_STATUS_PARSE = 3,
  // Well-formed input used in the wrong context.
  NCSYM_STATUS_INVALID = 4,
  NCSYM_STATUS_DIVISION_BY_ZERO = 5,
  // Singular minor or vanishing Vandermonde quasideterminant.
  NCSYM_STATUS_UNDEFINED = 6,
  NCSYM_STATUS_DEPENDENT_ROOTS = 7,
  NCSYM_STATUS_INDEX_OUT_OF_RANGE = 8,
  NCSYM_STATUS_LIMIT_EXCEEDED = 9,
  // An internal consistency check failed.
  NCSYM_STATUS_INCONSISTENT = 10,
  NCSYM_STATUS_UNDERDETERMINED = 11,
  NCSYM_STATUS_NOT_FORCED = 12,
  // A Rust panic was caught at the boundary.
  NCSYM_STATUS_PANIC = 13,
} NcsymStatus;

// Result of the no-go pipeline for one `n`.
typedef struct NcsymNogoReport NcsymNogoReport;

// A polynomial in a central variable with quaternion coefficients.
typedef struct NcsymPolynomial NcsymPolynomial;

// A rational quaternion.
typedef struct NcsymQuaternion NcsymQuaternion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. The caller
// owns the returned string.
char *ncsym_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void ncsym_string_free(char *s);

// Parses a quaternion expression such as `1/2+3i-j` or `(1+i)*j`.
//
// # Safety
// `text` must be a valid C string and `out` a valid pointer.
enum NcsymStatus ncsym_quaternion_parse(const char *text_in, struct NcsymQuaternion **out);

// # Safety
// `q` must come from this library and not be freed twice.
void ncsym_quaternion_free(struct NcsymQuaternion *q);

// Canonical text form, e.g. `1/2+3i-j`.
//
// # Safety
// `q` must be a live handle and `out` a valid pointer.
enum NcsymStatus ncsym_quaternion_to_string(const struct NcsymQuaternion *q, char **out);

// `a * b`.
//
// # Safety
// `a`, `b` must be live handles and `out` a valid pointer.
enum NcsymStatus ncsym_quaternion_mul(const struct NcsymQuaternion *a,
                                      const struct NcsymQuaternion *b,
                                      struct NcsymQuaternion **out);

// `a + b`.
//
// # Safety
// `a`, `b` must be live handles and `out` a valid pointer.
enum NcsymStatus ncsym_quaternion_add(const struct NcsymQuaternion *a,
                                      const struct NcsymQuaternion *b,
                                      struct NcsymQuaternion **out);

// Multiplicative inverse; fails with `DIVISION_BY_ZERO` on zero.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum NcsymStatus ncsym_quaternion_inverse(const struct NcsymQuaternion *a,
                                          struct NcsymQuaternion **out);

// Parses a polynomial in `t`, e.g. `t^2 - (i+j)*t - k`.
//
// # Safety
// `text` must be a valid C string and `out` a valid pointer.
enum NcsymStatus ncsym_polynomial_parse(const char *text_in, struct NcsymPolynomial **out);

// # Safety
// `p` must come from this library and not be freed twice.
void ncsym_polynomial_free(struct NcsymPolynomial *p);

// Display form, highest degree first.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum NcsymStatus ncsym_polynomial_to_string(const struct NcsymPolynomial *p, char **out);

// `Σ a_k x^k`, or `Σ x^k a_k` when `right` is true.
//
// # Safety
// `p`, `x` must be live handles and `out` a valid pointer.
enum NcsymStatus ncsym_polynomial_eval(const struct NcsymPolynomial *p,
                                       const struct NcsymQuaternion *x,
                                       bool right,
                                       struct NcsymQuaternion **out);

// Writes `q` and `r` with `p = q * (t - x) + r`.
//
// # Safety
// `p`, `x` must be live handles; `quotient` and `remainder` valid pointers.
enum NcsymStatus ncsym_polynomial_right_divide(const struct NcsymPolynomial *p,
                                               const struct NcsymQuaternion *x,
                                               struct NcsymPolynomial **quotient,
                                               struct NcsymQuaternion **remainder);

// Normal form in `Q_n` of an expression in `X{..}`, `x{..;i}` and `y<r>`, as JSON.
//
// # Safety
// `text` must be a valid C string and `out` a valid pointer.
enum NcsymStatus ncsym_normal_form_json(const char *text_in, uint32_t n, char **out);

// Runs the no-go pipeline for `Q_n`.
//
// # Safety
// `out` must be a valid pointer.
enum NcsymStatus ncsym_nogo_run(uint32_t n, uint64_t seed, struct NcsymNogoReport **out);

// # Safety
// `r` must come from this library and not be freed twice.
void ncsym_nogo_free(struct NcsymNogoReport *r);

// Whether the obstruction tensor is nonzero.
//
// # Safety
// `r` must be a live handle and `out` a valid pointer.
enum NcsymStatus ncsym_nogo_witness_nonzero(const struct NcsymNogoReport *r, bool *out);

// The obstruction tensor in display form.
//
// # Safety
// `r` must be a live handle and `out` a valid pointer.
enum NcsymStatus ncsym_nogo_witness_string(const struct NcsymNogoReport *r, char **out);

// The full report as JSON.
//
// # Safety
// `r` must be a live handle and `out` a valid pointer.
enum NcsymStatus ncsym_nogo_json(const struct NcsymNogoReport *r, char **out);

// The step-by-step text transcript.
//
// # Safety
// `r` must be a live handle and `out` a valid pointer.
enum NcsymStatus ncsym_nogo_transcript(const struct NcsymNogoReport *r, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCSYM_H */
