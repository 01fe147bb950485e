#ifndef ARTINLAB_H
#define ARTINLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ArtinDominance {
  ARTIN_DOMINANCE_LESS = -1,
  ARTIN_DOMINANCE_EQUAL = 0,
  ARTIN_DOMINANCE_GREATER = 1,
  ARTIN_DOMINANCE_INCOMPARABLE = 2,
} ArtinDominance;

typedef enum ArtinLefschetzMode {
  ARTIN_LEFSCHETZ_MODE_GRADED = 0,
  ARTIN_LEFSCHETZ_MODE_LOCAL = 1,
} ArtinLefschetzMode;

typedef enum ArtinSampleMode {
  ARTIN_SAMPLE_MODE_LINEAR = 0,
  ARTIN_SAMPLE_MODE_LOCAL = 1,
} ArtinSampleMode;

typedef enum ArtinStatus {
  ARTIN_STATUS_OK = 0,
  ARTIN_STATUS_PARSE_ERROR = 1,
  ARTIN_STATUS_MATH_ERROR = 2,
  ARTIN_STATUS_FALSIFICATION = 3,
  ARTIN_STATUS_NULL_POINTER = 4,
  ARTIN_STATUS_BUFFER_TOO_SMALL = 5,
  ARTIN_STATUS_INVALID_ARGUMENT = 6,
  ARTIN_STATUS_PANIC = 7,
} ArtinStatus;

typedef enum ArtinTheoremOutcome {
  ARTIN_THEOREM_OUTCOME_GREATER = 0,
  ARTIN_THEOREM_OUTCOME_EQUAL = 1,
  ARTIN_THEOREM_OUTCOME_UNRESOLVED = 2,
  ARTIN_THEOREM_OUTCOME_FALSIFIED = 3,
} ArtinTheoremOutcome;

/**
 * A graded Artinian algebra.
 */
typedef struct ArtinAlgebra ArtinAlgebra;

/**
 * An extension triple `A -> C -> B`.
 */
typedef struct ArtinTriple ArtinTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse an algebra file's text and build the algebra.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out_algebra` a valid pointer.
 */
enum ArtinStatus artin_algebra_parse(const char *text, struct ArtinAlgebra **out_algebra);

/**
 * # Safety
 * `algebra` must come from `artin_algebra_parse` and not be used afterwards.
 */
void artin_algebra_free(struct ArtinAlgebra *algebra);

/**
 * # Safety
 * Pointers must be valid.
 */
enum ArtinStatus artin_algebra_dimension(const struct ArtinAlgebra *algebra, size_t *dim);

/**
 * # Safety
 * `buf` must hold `cap` entries; other pointers must be valid.
 */
enum ArtinStatus artin_algebra_hilbert(const struct ArtinAlgebra *algebra,
                                       size_t *buf,
                                       size_t cap,
                                       size_t *len);

/**
 * Hilbert function of the `m`-adic filtration.
 *
 * # Safety
 * As for `artin_algebra_hilbert`.
 */
enum ArtinStatus artin_algebra_local_hilbert(const struct ArtinAlgebra *algebra,
                                             size_t *buf,
                                             size_t cap,
                                             size_t *len);

/**
 * The algebra in file format; free with `artin_string_free`.
 *
 * # Safety
 * `algebra` must be valid.
 */
char *artin_algebra_render(const struct ArtinAlgebra *algebra);

/**
 * Jordan type of multiplication by `element`, a polynomial in the
 * algebra's variables.
 *
 * # Safety
 * `element` must be NUL-terminated; `buf` must hold `cap` entries.
 */
enum ArtinStatus artin_jordan_type(const struct ArtinAlgebra *algebra,
                                   const char *element,
                                   size_t *buf,
                                   size_t cap,
                                   size_t *len);

/**
 * Dominance maximum of `samples` seeded random elements; `mode` is an
 * `ArtinSampleMode`.
 *
 * # Safety
 * `buf` must hold `cap` entries; other pointers must be valid.
 */
enum ArtinStatus artin_generic_jordan_type(const struct ArtinAlgebra *algebra,
                                           uint32_t mode,
                                           size_t samples,
                                           uint64_t seed,
                                           size_t *buf,
                                           size_t cap,
                                           size_t *len);

/**
 * Strong Lefschetz verdict; `mode` is an `ArtinLefschetzMode`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ArtinStatus artin_lefschetz(const struct ArtinAlgebra *algebra,
                                 uint32_t mode,
                                 size_t samples,
                                 uint64_t seed,
                                 bool *verdict);

/**
 * Compare two partitions given as weakly decreasing arrays.
 *
 * # Safety
 * `p` and `q` must hold `p_len` and `q_len` entries.
 */
enum ArtinStatus artin_dominance(const size_t *p,
                                 size_t p_len,
                                 const size_t *q,
                                 size_t q_len,
                                 enum ArtinDominance *result);

/**
 * Jordan type of `J_p (x) J_q` in characteristic `characteristic`.
 *
 * # Safety
 * Input arrays must hold their stated lengths; `buf` must hold `cap` entries.
 */
enum ArtinStatus artin_cg_tensor(const size_t *p,
                                 size_t p_len,
                                 const size_t *q,
                                 size_t q_len,
                                 uint64_t characteristic,
                                 size_t *buf,
                                 size_t cap,
                                 size_t *len);

/**
 * Parse a triple file's text. `base_dir` resolves `include` lines and may be null.
 *
 * # Safety
 * Strings must be NUL-terminated; `out_triple` must be valid.
 */
enum ArtinStatus artin_triple_parse(const char *text,
                                    const char *base_dir,
                                    struct ArtinTriple **out_triple);

/**
 * # Safety
 * `triple` must come from `artin_triple_parse` and not be used afterwards.
 */
void artin_triple_free(struct ArtinTriple *triple);

/**
 * Free-extension verdict of a triple.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ArtinStatus artin_verify_extension(const struct ArtinTriple *triple, bool *verdict);

/**
 * Compare generic Jordan types of `C` and `A (x) B`. Returns
 * `ARTIN_STATUS_FALSIFICATION` when `P_C < P_{A (x) B}`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ArtinStatus artin_theorem_check(const struct ArtinTriple *triple,
                                     size_t samples,
                                     uint64_t seed,
                                     enum ArtinTheoremOutcome *outcome);

/**
 * Copy of the calling thread's last error message, or null. Free with
 * `artin_string_free`.
 */
char *artin_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void artin_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *artin_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARTINLAB_H */
