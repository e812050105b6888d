#ifndef HOPCALC_H
#define HOPCALC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HopcalcStatus {
  HOPCALC_STATUS_OK = 0,
  HOPCALC_STATUS_NULL_ARGUMENT = 1,
  HOPCALC_STATUS_PARSE = 2,
  HOPCALC_STATUS_PRECONDITION = 3,
  HOPCALC_STATUS_SEARCH_CAP = 4,
  HOPCALC_STATUS_BUFFER_TOO_SMALL = 5,
  HOPCALC_STATUS_PANIC = 6,
} HopcalcStatus;

/**
 * A chain complex built from its JSON description.
 */
typedef struct HopcalcChainComplex HopcalcChainComplex;

/**
 * A sum of admissible δ-words.
 */
typedef struct HopcalcSum HopcalcSum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on this thread.
 */
const char *hopcalc_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hopcalc_string_free(char *s);

/**
 * Parity of `binom(h, k)`: 1 if odd, 0 if even.
 */
uint8_t hopcalc_binom_mod2(uint64_t h, uint64_t k);

/**
 * Normal form of a word such as `"d5 d4"` or `"a1 a1 @3"`.
 *
 * # Safety
 * `word` must be a NUL-terminated string; `out` must be writable.
 */
enum HopcalcStatus hopcalc_normalize(const char *word, struct HopcalcSum **out);

/**
 * `outer ∘ inner`, normalized.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum HopcalcStatus hopcalc_sum_compose(const struct HopcalcSum *outer,
                                       const struct HopcalcSum *inner,
                                       struct HopcalcSum **out);

/**
 * Number of terms; 0 for null.
 *
 * # Safety
 * `sum` must be null or live.
 */
size_t hopcalc_sum_len(const struct HopcalcSum *sum);

/**
 * Copies the indices of term `index` (outermost first) into `buf`.
 *
 * `len_out` always receives the word length; if it exceeds `cap` nothing is
 * copied and `BufferTooSmall` is returned.
 *
 * # Safety
 * `sum` must be live, `buf` writable for `cap` entries, `len_out` writable.
 */
enum HopcalcStatus hopcalc_sum_word(const struct HopcalcSum *sum,
                                    size_t index,
                                    uint32_t *buf,
                                    size_t cap,
                                    size_t *len_out);

/**
 * The sum as text, e.g. `"d6 d3"`, or null for a null handle.
 *
 * # Safety
 * `sum` must be null or live. Release the result with [`hopcalc_string_free`].
 */
char *hopcalc_sum_to_string(const struct HopcalcSum *sum);

/**
 * # Safety
 * `sum` must be null or a live handle not freed before.
 */
void hopcalc_sum_free(struct HopcalcSum *sum);

/**
 * Dimensions of `π_t S(n)` for `t = 0..=max_degree` into `out`, which must
 * hold `max_degree + 1` entries.
 *
 * # Safety
 * `out` must be writable for `out_len` entries.
 */
enum HopcalcStatus hopcalc_sphere_poincare(uint32_t n,
                                           uint32_t max_degree,
                                           uint64_t *out,
                                           size_t out_len);

/**
 * Least `s` with `θ(s,t) δ_i = 0`. A `cap` of 0 selects the default `t + 16`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HopcalcStatus hopcalc_annihilation_order(uint32_t i, uint32_t t, uint32_t cap, uint32_t *out);

/**
 * E¹ page of `W` (`{"generators":[{"name","degree"}]}`) as a JSON array of
 * `{"s","t","dim","basis"}` rows.
 *
 * # Safety
 * `w_json` must be a NUL-terminated string; `out` must be writable. Release
 * the result with [`hopcalc_string_free`].
 */
enum HopcalcStatus hopcalc_e1_page_json(const char *w_json,
                                        uint64_t s_max,
                                        uint32_t t_max,
                                        char **out);

/**
 * Builds a chain complex from `{"symbols":[…],"ring":{"vars","trunc"}}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HopcalcStatus hopcalc_chain_complex_from_json(const char *json,
                                                   struct HopcalcChainComplex **out);

/**
 * # Safety
 * `complex` must be null or a live handle not freed before.
 */
void hopcalc_chain_complex_free(struct HopcalcChainComplex *complex);

/**
 * Least `r` with `γ₂^r(u) = 0` for an element such as `"e1*x"`.
 *
 * # Safety
 * `complex` must be live, `element` NUL-terminated, `out` writable.
 */
enum HopcalcStatus hopcalc_chain_nilpotence_order(const struct HopcalcChainComplex *complex,
                                                  const char *element,
                                                  uint32_t *out);

/**
 * Checks `∂ϑ^r(u) = γ₂^r(∂u)` for `r = 1..=r_max`; `all_hold` receives the
 * verdict.
 *
 * # Safety
 * `complex` must be live, `symbol` NUL-terminated, `all_hold` writable.
 */
enum HopcalcStatus hopcalc_chain_verify_nilcond(const struct HopcalcChainComplex *complex,
                                                const char *symbol,
                                                uint32_t r_max,
                                                bool *all_hold);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOPCALC_H */
