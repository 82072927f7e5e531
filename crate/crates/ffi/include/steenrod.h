#ifndef STEENROD_H
#define STEENROD_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * `method` values for `st_invert`.
 */
#define ST_INVERT_RECURSIVE 0

#define ST_INVERT_CLOSED 1

#define ST_INVERT_SPLIT 2

/**
 * `st_filtration` reports stages in half steps; these mark the ends.
 */
#define ST_FILTRATION_BOTTOM -1

#define ST_FILTRATION_TOP -2

/**
 * Return codes. Zero is success; everything else is an error.
 */
typedef enum StStatus {
  ST_STATUS_OK = 0,
  ST_STATUS_NULL_POINTER = 1,
  ST_STATUS_INVALID_UTF8 = 2,
  ST_STATUS_PARSE = 3,
  /**
   * A precondition of the operation failed (mismatched elements, wrong
   * prime or flavor, …).
   */
  ST_STATUS_INVALID = 4,
  ST_STATUS_LIMIT_EXCEEDED = 5,
  ST_STATUS_PANIC = 6,
} StStatus;

/**
 * An element of a truncated Steenrod group.
 */
typedef struct StElement StElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *st_last_error(void);

/**
 * Library version as a static string.
 */
const char *st_version(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void st_string_free(char *s);

/**
 * # Safety
 * `h` must come from this library or be null.
 */
void st_element_free(struct StElement *h);

/**
 * Parses one group element from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum StStatus st_element_from_json(const char *json, struct StElement **out);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum StStatus st_element_to_json(const struct StElement *h, char **out);

/**
 * Human-readable series form, e.g. `X + (zeta1)*X^2 [base, k=1]`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum StStatus st_element_display(const struct StElement *h, char **out);

/**
 * `a·b = b(a(X))`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum StStatus st_compose(const struct StElement *a,
                         const struct StElement *b,
                         struct StElement **out);

/**
 * `method` is one of the `ST_INVERT_*` constants.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum StStatus st_invert(const struct StElement *a, int32_t method, struct StElement **out);

/**
 * `(a⁻¹b⁻¹)(ab)`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum StStatus st_commutator(const struct StElement *a,
                            const struct StElement *b,
                            struct StElement **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum StStatus st_rho(const struct StElement *a, struct StElement **out);

/**
 * Filtration stage in half steps (stage 1.5 is 3), or one of
 * `ST_FILTRATION_BOTTOM` / `ST_FILTRATION_TOP`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum StStatus st_filtration(const struct StElement *a, int32_t *out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum StStatus st_element_equal(const struct StElement *a, const struct StElement *b, bool *out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum StStatus st_is_identity(const struct StElement *a, bool *out);

/**
 * Membership of the index `(E, R)` in the monomial basis of `J<k>`
 * (`span == false`) or of its dual in the spanning set of `(A/J<k>)*`
 * (`span == true`). `e` holds `e_0, e_1, …`, `r` holds `r_1, r_2, …`.
 *
 * # Safety
 * `e` and `r` must point to `e_len` and `r_len` readable values (or be
 * null with length 0); `out` must be writable.
 */
enum StStatus st_milnor_query(uint32_t p,
                              uint32_t k,
                              const uint32_t *e,
                              size_t e_len,
                              const uint32_t *r,
                              size_t r_len,
                              bool span,
                              bool *out);

/**
 * Runs every property suite and writes the JSON report. `ok` is set to
 * whether all suites passed.
 *
 * # Safety
 * `report` and `ok` must be writable.
 */
enum StStatus st_verify(uint32_t p,
                        size_t k,
                        uint64_t seed,
                        size_t samples,
                        char **report,
                        bool *ok);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STEENROD_H */
