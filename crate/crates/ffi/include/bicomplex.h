#ifndef BICOMPLEX_H
#define BICOMPLEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call. `BCX_STATUS_OK` is zero.
typedef enum BcxStatus {
  BCX_STATUS_OK = 0,
  BCX_STATUS_NOT_INVERTIBLE = 1,
  BCX_STATUS_UNSUPPORTED_ON_EXACT_BACKEND = 2,
  BCX_STATUS_EMPTY_SET = 3,
  BCX_STATUS_NEGATIVE_HYPERBOLIC = 4,
  BCX_STATUS_INVALID_ARGUMENT = 5,
  BCX_STATUS_SHAPE_MISMATCH = 6,
  BCX_STATUS_NOT_SQUARE = 7,
  BCX_STATUS_SINGULAR_COMPONENT = 8,
  BCX_STATUS_DOES_NOT_SPLIT = 9,
  BCX_STATUS_CONSISTENCY_FAILURE = 10,
  BCX_STATUS_NOT_SELF_ADJOINT = 11,
  BCX_STATUS_NO_CONVERGENCE = 12,
  BCX_STATUS_DEGENERATE_SPECTRUM = 13,
  BCX_STATUS_SUBSPACE_IS_FULL = 14,
  BCX_STATUS_ZERO_SUBSPACE = 15,
  BCX_STATUS_PARSE = 16,
  // A required pointer argument was null.
  BCX_STATUS_NULL_POINTER = 100,
  // Input text was not valid UTF-8.
  BCX_STATUS_INVALID_UTF8 = 101,
  // The library panicked; this is a bug.
  BCX_STATUS_PANIC = 102,
} BcxStatus;

// Opaque matrix handle.
typedef struct BcxMatrix BcxMatrix;

// A floating-point bicomplex scalar in idempotent coordinates:
// `c1_re + i c1_im` is the coefficient of `e`, `c2_*` that of `e†`.
typedef struct BcxScalar {
  double c1_re;
  double c1_im;
  double c2_re;
  double c2_im;
} BcxScalar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null if none.
// The pointer stays valid until the next failing call on the same thread.
const char *bcx_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void bcx_string_free(char *s);

// Parses a matrix from JSON text. String entries select the exact backend.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum BcxStatus bcx_matrix_from_json(const char *json, struct BcxMatrix **out);

// Releases a matrix handle. Null is ignored.
//
// # Safety
// `m` must come from this library and not have been freed already.
void bcx_matrix_free(struct BcxMatrix *m);

// Row count, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
uintptr_t bcx_matrix_rows(const struct BcxMatrix *m);

// Column count, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
uintptr_t bcx_matrix_cols(const struct BcxMatrix *m);

// 1 if the matrix uses exact Gaussian-rational arithmetic, 0 otherwise.
//
// # Safety
// `m` must be null or a live handle.
int32_t bcx_matrix_is_exact(const struct BcxMatrix *m);

// Serializes a matrix to JSON.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum BcxStatus bcx_matrix_to_json(const struct BcxMatrix *m, char **out);

// Product `a * b`. The result is exact only if both operands are.
//
// # Safety
// `a`, `b` must be live handles and `out` a valid pointer.
enum BcxStatus bcx_matrix_mul(const struct BcxMatrix *a,
                              const struct BcxMatrix *b,
                              struct BcxMatrix **out);

// Inverse; fails with `BCX_STATUS_SINGULAR_COMPONENT` if either component is singular.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum BcxStatus bcx_matrix_inverse(const struct BcxMatrix *m, struct BcxMatrix **out);

// `{"determinant", "singular": [bool, bool]}` as JSON.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum BcxStatus bcx_matrix_determinant_json(const struct BcxMatrix *m, char **out);

// Jordan decomposition of an exact matrix as JSON `{p, j, blocks, superdiagonal_alphabet}`.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum BcxStatus bcx_matrix_jordan_json(const struct BcxMatrix *m, char **out);

// Invariant-subspace lattice of an exact matrix, as JSON when `dot == 0`
// or as a Graphviz digraph otherwise.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum BcxStatus bcx_matrix_lattice(const struct BcxMatrix *m, int32_t dot, char **out);

// Unitary diagonalization of a self-adjoint matrix as JSON `{p, d, pairing, residuals}`.
// `pairing` may be null for the identity pairing; otherwise it holds `len`
// indices and `len` must equal the dimension.
//
// # Safety
// `m` must be a live handle, `out` a valid pointer, and `pairing` null or
// valid for `len` reads.
enum BcxStatus bcx_matrix_spectral_json(const struct BcxMatrix *m,
                                        const uintptr_t *pairing,
                                        uintptr_t len,
                                        char **out);

// Scalar from Euclidean coordinates `z1 + j z2`.
struct BcxScalar bcx_scalar_from_euclidean(double z1_re, double z1_im, double z2_re, double z2_im);

struct BcxScalar bcx_scalar_add(struct BcxScalar a, struct BcxScalar b);

struct BcxScalar bcx_scalar_sub(struct BcxScalar a, struct BcxScalar b);

struct BcxScalar bcx_scalar_mul(struct BcxScalar a, struct BcxScalar b);

struct BcxScalar bcx_scalar_conjugate(struct BcxScalar a);

// Multiplicative inverse; `BCX_STATUS_NOT_INVERTIBLE` if a component is zero.
//
// # Safety
// `out` must be a valid pointer.
enum BcxStatus bcx_scalar_inverse(struct BcxScalar a, struct BcxScalar *out);

// Hyperbolic modulus `|c1| e + |c2| e†`, written as its two components.
//
// # Safety
// `h1` and `h2` must be valid pointers.
enum BcxStatus bcx_scalar_hyperbolic_norm(struct BcxScalar a, double *h1, double *h2);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BICOMPLEX_H */
