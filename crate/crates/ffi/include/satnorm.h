#ifndef SATNORM_H
#define SATNORM_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared with the command-line tool.
 */
typedef enum {
  SN_STATUS_OK = 0,
  SN_STATUS_WITNESS = 1,
  SN_STATUS_VERIFY_FAILED = 2,
  SN_STATUS_INVALID_INPUT = 64,
  SN_STATUS_INTERNAL = 70,
} SnStatus;

/**
 * Opaque root-system handle.
 */
typedef struct SnRealization SnRealization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next library call on the same thread; do not free it.
 */
const char *sn_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *sn_version(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library (or null).
 */
void sn_string_free(char *s);

/**
 * Builds the realization for a root system id such as "E8" or "G2".
 *
 * # Safety
 * `id` must be a valid NUL-terminated string; `out` must be a valid
 * pointer. On success `*out` owns the handle (free with
 * [`sn_realization_free`]).
 */
SnStatus sn_realization_new(const char *id, SnRealization **out);

/**
 * # Safety
 * `r` must come from [`sn_realization_new`] (or be null).
 */
void sn_realization_free(SnRealization *r);

/**
 * JSON dump of the realization (the `roots` CLI payload).
 *
 * # Safety
 * `r` from [`sn_realization_new`]; `out_json` valid; free the result with
 * [`sn_string_free`].
 */
SnStatus sn_roots_json(const SnRealization *r, char **out_json);

/**
 * Enumerates M(lambda) for a highest weight in fundamental-weight
 * coordinates; JSON payload out.
 *
 * # Safety
 * Pointer contracts as in [`sn_roots_json`]; `hw` points at `hw_len` ints.
 */
SnStatus sn_weights_json(const SnRealization *r,
                         const int64_t *hw,
                         uintptr_t hw_len,
                         uintptr_t limit,
                         char **out_json);

/**
 * Membership proof record for `weight_csv` (ambient coordinates, comma
 * separated rationals) against M(lambda). Status `Witness` means "not a
 * member", with the proof record in the payload either way.
 *
 * # Safety
 * Pointer contracts as above; `weight_csv` NUL-terminated.
 */
SnStatus sn_member_json(const SnRealization *r,
                        const int64_t *hw,
                        uintptr_t hw_len,
                        const char *weight_csv,
                        char **out_json);

/**
 * Classification verdict for the highest weight; status `Ok` = normal,
 * `Witness` = verified not normal.
 *
 * # Safety
 * Pointer contracts as above.
 */
SnStatus sn_classify_json(const SnRealization *r,
                          const int64_t *hw,
                          uintptr_t hw_len,
                          char **out_json);

/**
 * Saturation decision on a `{"dim": n, "vectors": [...]}` JSON set; status
 * `Ok` = saturated, `Witness` = not saturated (witness in the payload).
 *
 * # Safety
 * `set_json` NUL-terminated; `out_json` valid.
 */
SnStatus sn_saturated_json(const char *set_json, char **out_json);

/**
 * Hereditary-normality decision on a JSON set; status `Ok` = normal,
 * `Witness` = violating subset found.
 *
 * # Safety
 * As in [`sn_saturated_json`].
 */
SnStatus sn_hereditary_json(const char *set_json, char **out_json);

/**
 * Verifies the certificate corpus (or a single certificate when `case_id`
 * is non-null). Pass 0 for either sample count to use the defaults.
 * `Ok` = everything passed, `VerifyFailed` = at least one entry failed.
 *
 * # Safety
 * `case_id` may be null; `out_json` valid.
 */
SnStatus sn_verify_paper_json(const char *case_id,
                              uintptr_t lemma_samples,
                              uintptr_t random_per_coset,
                              char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SATNORM_H */
