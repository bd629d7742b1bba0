#ifndef COXETER_PERP_H
#define COXETER_PERP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum CoxStatus {
  COX_STATUS_OK = 0,
  COX_STATUS_NULL_POINTER = 1,
  COX_STATUS_INVALID_UTF8 = 2,
  COX_STATUS_PARSE = 3,
  COX_STATUS_UNKNOWN_GENERATOR = 4,
  COX_STATUS_NOT_SATURATED = 5,
  COX_STATUS_INCONSISTENCY = 6,
  COX_STATUS_INVALID_ARGUMENT = 7,
  COX_STATUS_PANIC = 8,
} CoxStatus;

// Opaque Coxeter matrix.
typedef struct CoxMatrix CoxMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a matrix in the text format. On success `*out` owns a new handle.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum CoxStatus cox_matrix_parse(const char *text, struct CoxMatrix **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `m` must come from [`cox_matrix_parse`] and not have been freed.
void cox_matrix_free(struct CoxMatrix *m);

// Number of generators.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum CoxStatus cox_matrix_rank(const struct CoxMatrix *m, uintptr_t *out);

// Sets `*finite` to 1 when the centralizer subgroup of `x` is finitely
// generated and to 0 otherwise.
//
// # Safety
// `m` must be a live handle, `x` a NUL-terminated string, `finite` valid.
enum CoxStatus cox_decide(const struct CoxMatrix *m, const char *x, int *finite);

// Verdict as JSON, including the corollary checks.
//
// # Safety
// `m` must be a live handle, `x` a NUL-terminated string, `out` valid.
// Free `*out` with [`cox_string_free`].
enum CoxStatus cox_decide_json(const struct CoxMatrix *m, const char *x, char **out);

// Canonical generators as JSON. Zero limits select the defaults.
//
// # Safety
// As for [`cox_decide_json`].
enum CoxStatus cox_generators_json(const struct CoxMatrix *m,
                                   const char *x,
                                   uintptr_t max_path_len,
                                   uintptr_t max_states,
                                   char **out);

// Canonical roots from brute-force root enumeration up to `depth`.
//
// # Safety
// As for [`cox_decide_json`].
enum CoxStatus cox_oracle_json(const struct CoxMatrix *m,
                               const char *x,
                               uintptr_t depth,
                               char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void cox_string_free(char *s);

// Message for the last failed call on this thread, or null. Valid until
// the next call into the library on the same thread.
const char *cox_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXETER_PERP_H */
