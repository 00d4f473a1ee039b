#ifndef MATPOLY_H
#define MATPOLY_H

/* Generated by cbindgen from matpoly-ffi; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every API call.
typedef enum {
  MATPOLY_OK = 0,
  MATPOLY_ERR_IO = 1,
  MATPOLY_ERR_PARSE = 2,
  MATPOLY_ERR_INVALID = 3,
  MATPOLY_ERR_NOT_SIMPLE = 4,
  MATPOLY_ERR_SIZE_GUARD = 5,
  MATPOLY_ERR_INTEGRITY = 6,
  MATPOLY_ERR_NULL_ARGUMENT = 7,
  MATPOLY_ERR_PANIC = 8,
} matpoly_status;

// Opaque matroid handle.
typedef struct matpoly_matroid matpoly_matroid;

// Parameter profile of a matroid. `d` and `dstar` are -1 when undefined
// (rank 0 and full rank respectively).
typedef struct {
  uint64_t n;
  uint64_t k;
  int64_t d;
  int64_t dstar;
  bool simple;
  bool cosimple;
} matpoly_params;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread; empty string when
// no failure has occurred. Valid until the next failing call here.
const char *matpoly_last_error(void);

// Builds a matroid from a matrix file (`q k n` header) or explicit rank
// table (`ranks n` header).
//
// # Safety
// `path` must be NUL-terminated; `out` must be a valid pointer.
matpoly_status matpoly_matroid_from_file(const char *path, matpoly_matroid **out);

// Builds the column matroid of a row-major `rows x cols` matrix over the
// prime field F_q.
//
// # Safety
// `entries` must point to `rows * cols` readable values; `out` must be a
// valid pointer.
matpoly_status matpoly_matroid_from_matrix(uint64_t q,
                                           size_t rows,
                                           size_t cols,
                                           const uint64_t *entries,
                                           matpoly_matroid **out);

// Builds the uniform matroid U(k, n).
//
// # Safety
// `out` must be a valid pointer.
matpoly_status matpoly_matroid_uniform(size_t k, size_t n, matpoly_matroid **out);

// Builds the dual of an existing matroid. The input handle stays owned by
// the caller.
//
// # Safety
// `m` must be a live handle from this library; `out` must be valid.
matpoly_status matpoly_matroid_dual(const matpoly_matroid *m, matpoly_matroid **out);

// Releases a matroid handle. NULL is ignored.
//
// # Safety
// `m` must be NULL or a handle from this library, not freed before.
void matpoly_matroid_free(matpoly_matroid *m);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string from this library, not freed before.
void matpoly_string_free(char *s);

// Reads the (n, k, d, d*) profile and simplicity flags.
//
// # Safety
// `m` must be a live handle; `out` must be a valid pointer.
matpoly_status matpoly_matroid_params(const matpoly_matroid *m, matpoly_params *out);

// Computes chi, mu, the Tutte polynomial, and (when 0 < k < n and the
// parameters admit one) the zeta polynomial, as one JSON document:
// `{"n", "k", "params", "chi", "mu", "tutte", "zeta"}`. Coefficients are
// exact decimal strings. The matroid must be simple.
//
// # Safety
// `m` must be a live handle; `out` must be a valid pointer.
matpoly_status matpoly_invariants_json(const matpoly_matroid *m, char **out);

// Runs the full identity suite. `out` receives the JSON report;
// `all_pass` (optional) is set to whether every check passed.
//
// # Safety
// `m` must be a live handle; `out` must be a valid pointer; `all_pass`
// may be NULL.
matpoly_status matpoly_verify_json(const matpoly_matroid *m, char **out, bool *all_pass);

// Recovers the coboundary polynomial from a pair of Mobius polynomial
// JSON documents (`{"n", "k", "mu": [[..]]}`). `method` is "linear",
// "zeta", or "both"; with "both" the two answers are cross-checked. The
// result JSON carries the reports, agreement flag, and chi when unique.
//
// # Safety
// The three input strings must be NUL-terminated; `out` must be valid.
matpoly_status matpoly_reconstruct_json(const char *mu_json,
                                        const char *mu_dual_json,
                                        const char *method,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATPOLY_H */
