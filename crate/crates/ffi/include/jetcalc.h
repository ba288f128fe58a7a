/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef JETCALC_H
#define JETCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes shared by every function of the C interface.
 */
typedef enum JcStatus {
  JC_STATUS_OK = 0,
  JC_STATUS_NULL_ARGUMENT = 1,
  JC_STATUS_INVALID_UTF8 = 2,
  JC_STATUS_SYNTAX_ERROR = 3,
  JC_STATUS_NOT_DIVISIBLE = 4,
  JC_STATUS_RESOURCE_LIMIT = 5,
  JC_STATUS_INVALID_PRIME = 6,
  JC_STATUS_INVALID_INPUT = 7,
  JC_STATUS_INVALID_SERIES = 8,
  JC_STATUS_AMBIENT_MISMATCH = 9,
  JC_STATUS_MISSING_INTERSECTION_NUMBER = 10,
  JC_STATUS_HYPOTHESIS_VIOLATION = 11,
  JC_STATUS_LENGTH_MISMATCH = 12,
  JC_STATUS_INTERNAL = 13,
  JC_STATUS_PANIC = 14,
} JcStatus;

/*
 Opaque polynomial handle.
 */
typedef struct JcPolynomial JcPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses `text` into a new polynomial handle.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum JcStatus jc_poly_parse(const char *text, struct JcPolynomial **out);

/*
 Canonical text form of `poly`; release with [`jc_string_free`].

 # Safety
 `poly` must be a live handle and `out` a valid pointer.
 */
enum JcStatus jc_poly_to_string(const struct JcPolynomial *poly, char **out);

/*
 Releases a polynomial handle. NULL is ignored.

 # Safety
 `poly` must be NULL or a handle not yet freed.
 */
void jc_poly_free(struct JcPolynomial *poly);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must be NULL or a string from this library not yet freed.
 */
void jc_string_free(char *s);

/*
 `delta` applied `r >= 1` times at the odd prime `p`.

 # Safety
 `poly` must be a live handle and `out` a valid pointer.
 */
enum JcStatus jc_delta(const struct JcPolynomial *poly,
                       uint64_t p,
                       uint32_t r,
                       struct JcPolynomial **out);

/*
 The Frobenius lift `v@k -> v@k^p + p v@(k+1)` applied to `poly`.

 # Safety
 `poly` must be a live handle and `out` a valid pointer.
 */
enum JcStatus jc_frobenius(const struct JcPolynomial *poly, uint64_t p, struct JcPolynomial **out);

/*
 Jet presentation JSON of order `r` for the generators in `gens_text`
 (one polynomial per line, `#` comments).

 # Safety
 `gens_text` must be a NUL-terminated string and `out_json` a valid pointer.
 */
enum JcStatus jc_jet_presentation(const char *gens_text, uint64_t p, uint32_t r, char **out_json);

/*
 Bound report JSON for a genus-`g` curve in its Jacobian.

 # Safety
 `out_json` must be a valid pointer.
 */
enum JcStatus jc_bound_curve(uint64_t p, uint32_t g, char **out_json);

/*
 Bound report JSON from the Segre degrees `segre[0..len]`.

 # Safety
 `segre` must point to `len` integers (it may be NULL when `len == 0`) and
 `out_json` must be a valid pointer.
 */
enum JcStatus jc_bound_general(uint64_t p,
                               uint32_t n,
                               uint32_t d,
                               const int64_t *segre,
                               uintptr_t len,
                               char **out_json);

/*
 Bound report JSON for a complete intersection described by
 `config_json`. `p = 0` takes the prime from the configuration.

 # Safety
 `config_json` must be a NUL-terminated string and `out_json` a valid pointer.
 */
enum JcStatus jc_bound_ci(const char *config_json, uint64_t p, char **out_json);

/*
 Message describing the last failure on this thread, or NULL after a
 success. Owned by the library; do not free.
 */
const char *jc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JETCALC_H */
