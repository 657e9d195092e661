#ifndef QLACUNA_H
#define QLACUNA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C API call.
 */
typedef enum QlacunaStatus {
  /**
   * Success.
   */
  QLACUNA_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  QLACUNA_STATUS_NULL_ARGUMENT = 1,
  /**
   * A parameter was outside the supported domain.
   */
  QLACUNA_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Malformed JSON or text input.
   */
  QLACUNA_STATUS_PARSE_ERROR = 3,
  /**
   * Exact division had a nonzero remainder.
   */
  QLACUNA_STATUS_NOT_DIVISIBLE = 4,
} QlacunaStatus;

/**
 * Opaque handle to a verification certificate.
 */
typedef struct QlacunaCertificate QlacunaCertificate;

/**
 * Opaque handle to a dense integer polynomial in `q`.
 */
typedef struct QlacunaPoly QlacunaPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a polynomial from `len` coefficients (`coeffs[i]` is the
 * coefficient of `q^i`). `coeffs` may be null only when `len == 0`,
 * which yields the zero polynomial.
 *
 * # Safety
 * `coeffs` must point to at least `len` readable `int64_t`s, and `out`
 * must be a valid location to store the new handle.
 */
enum QlacunaStatus qlacuna_poly_from_coeffs(const int64_t *coeffs,
                                            size_t len,
                                            struct QlacunaPoly **out);

/**
 * Parses the canonical JSON form: an array of decimal coefficient
 * strings, index = exponent.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid store.
 */
enum QlacunaStatus qlacuna_poly_parse_json(const char *json, struct QlacunaPoly **out);

/**
 * Canonical JSON form of a polynomial; null on null input.
 *
 * # Safety
 * `p` must be a live handle from this library (or null).
 */
char *qlacuna_poly_to_json(const struct QlacunaPoly *p);

/**
 * Canonical text form (`c0 + c1*q + ...`); null on null input.
 *
 * # Safety
 * `p` must be a live handle from this library (or null).
 */
char *qlacuna_poly_to_text(const struct QlacunaPoly *p);

/**
 * Degree of the polynomial, with `-1` standing in for the zero
 * polynomial at this boundary.
 *
 * # Safety
 * `p` must be a live handle (or null) and `out_degree` a valid store.
 */
enum QlacunaStatus qlacuna_poly_degree(const struct QlacunaPoly *p, int64_t *out_degree);

/**
 * 1 when the handle is the zero polynomial, 0 otherwise, -1 on null.
 *
 * # Safety
 * `p` must be a live handle from this library (or null).
 */
int qlacuna_poly_is_zero(const struct QlacunaPoly *p);

/**
 * `out = a + b`.
 *
 * # Safety
 * All handles must be live; `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_poly_add(const struct QlacunaPoly *a,
                                    const struct QlacunaPoly *b,
                                    struct QlacunaPoly **out);

/**
 * `out = a - b`.
 *
 * # Safety
 * All handles must be live; `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_poly_sub(const struct QlacunaPoly *a,
                                    const struct QlacunaPoly *b,
                                    struct QlacunaPoly **out);

/**
 * `out = a * b`.
 *
 * # Safety
 * All handles must be live; `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_poly_mul(const struct QlacunaPoly *a,
                                    const struct QlacunaPoly *b,
                                    struct QlacunaPoly **out);

/**
 * Exact division over `Z[q]`: `out = a / b` when the division is exact.
 * Returns `NotDivisible` (with `*out` set to null) when it is not, and
 * `InvalidArgument` when `b` is zero.
 *
 * # Safety
 * All handles must be live; `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_poly_div_exact(const struct QlacunaPoly *a,
                                          const struct QlacunaPoly *b,
                                          struct QlacunaPoly **out);

/**
 * Remainder of `a` modulo the monic polynomial `m`.
 * `InvalidArgument` when `m` is not monic of degree >= 1.
 *
 * # Safety
 * All handles must be live; `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_poly_reduce_mod(const struct QlacunaPoly *a,
                                           const struct QlacunaPoly *m,
                                           struct QlacunaPoly **out);

/**
 * Value at `q = 1` as a decimal string; null on null input.
 *
 * # Safety
 * `p` must be a live handle from this library (or null).
 */
char *qlacuna_poly_eval_at_one(const struct QlacunaPoly *p);

/**
 * The d-th cyclotomic polynomial (`d >= 1`).
 *
 * # Safety
 * `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_cyclotomic(uint64_t d, struct QlacunaPoly **out);

/**
 * The Gaussian binomial `[n, k]_q` (zero outside `0 <= k <= n`).
 *
 * # Safety
 * `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_q_binomial(uint64_t n, int64_t k, struct QlacunaPoly **out);

/**
 * The q-factorial `[n]_q!`.
 *
 * # Safety
 * `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_q_factorial(uint64_t n, struct QlacunaPoly **out);

/**
 * Verifies the lacunary-sum divisibility theorem for one tuple and
 * returns the certificate.
 *
 * # Safety
 * `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_verify_theorem1(uint32_t n,
                                           uint32_t c,
                                           int64_t r,
                                           uint32_t l,
                                           int64_t h,
                                           struct QlacunaCertificate **out);

/**
 * Verifies the power-factor corollary for one tuple.
 *
 * # Safety
 * `out` must be a valid store.
 */
enum QlacunaStatus qlacuna_verify_corollary1(uint32_t n,
                                             uint32_t c,
                                             int64_t r,
                                             uint32_t l,
                                             int64_t h,
                                             struct QlacunaCertificate **out);

/**
 * 1 when the certificate holds, 0 when it fails, -1 on null.
 *
 * # Safety
 * `cert` must be a live handle from this library (or null).
 */
int qlacuna_certificate_holds(const struct QlacunaCertificate *cert);

/**
 * JSON form of a certificate; null on null input.
 *
 * # Safety
 * `cert` must be a live handle from this library (or null).
 */
char *qlacuna_certificate_to_json(const struct QlacunaCertificate *cert);

/**
 * Releases a polynomial handle. Null is a no-op.
 *
 * # Safety
 * `p` must have come from this library and not been freed already.
 */
void qlacuna_poly_free(struct QlacunaPoly *p);

/**
 * Releases a certificate handle. Null is a no-op.
 *
 * # Safety
 * `cert` must have come from this library and not been freed already.
 */
void qlacuna_certificate_free(struct QlacunaCertificate *cert);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must have come from this library and not been freed already.
 */
void qlacuna_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLACUNA_H */
