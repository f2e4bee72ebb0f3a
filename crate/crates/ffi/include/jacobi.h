#ifndef JACOBI_H
#define JACOBI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum JdStatus {
  JD_STATUS_OK = 0,
  JD_STATUS_DOMAIN = 1,
  JD_STATUS_PARSE = 2,
  JD_STATUS_NULL_POINTER = 3,
  JD_STATUS_INVALID_UTF8 = 4,
  JD_STATUS_PANIC = 5,
} JdStatus;

/**
 * A linear combination of diagrams over one frame.
 */
typedef struct JdCombination JdCombination;

/**
 * A quotient space with its degree cap.
 */
typedef struct JdSpace JdSpace;

/**
 * Lie-algebra-like weight data.
 */
typedef struct JdWeights JdWeights;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *jd_last_error(void);

/**
 * Parse a combination from its text form.
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` a valid pointer.
 */
enum JdStatus jd_parse(const char *input, struct JdCombination **out);

/**
 * Text form of a combination. Release the result with [`jd_string_free`].
 *
 * # Safety
 * `x` must come from this library and `out` must be a valid pointer.
 */
enum JdStatus jd_serialize(const struct JdCombination *x, char **out);

/**
 * Quotient space over a frame such as `empty`, `gamma2`, `I:x C:o` or
 * `marked: g=2`, refusing degrees above `cap`.
 *
 * # Safety
 * `frame` must be a NUL-terminated string and `out` a valid pointer.
 */
enum JdStatus jd_space_new(const char *frame, size_t cap, struct JdSpace **out);

/**
 * Dimension of the degree-`degree` part of the quotient.
 *
 * # Safety
 * `space` must come from this library and `out` must be a valid pointer.
 */
enum JdStatus jd_dim(const struct JdSpace *space, size_t degree, size_t *out);

/**
 * Canonical representative of `x` in the quotient.
 *
 * # Safety
 * `space` and `x` must come from this library and `out` must be valid.
 */
enum JdStatus jd_normal_form(const struct JdSpace *space,
                             const struct JdCombination *x,
                             struct JdCombination **out);

/**
 * Weight data from a preset name (`so3`, `sp2-toy`, ...) or, failing that,
 * from the data file format.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum JdStatus jd_weights_new(const char *spec, struct JdWeights **out);

/**
 * Value of the weight system on a closed combination, or on one whose
 * skeleton is all circles (each coloured by the adjoint). The value is
 * written as text; release it with [`jd_string_free`].
 *
 * # Safety
 * `w` and `x` must come from this library and `out` must be valid.
 */
enum JdStatus jd_eval(const struct JdWeights *w, const struct JdCombination *x, char **out);

/**
 * Release a string returned by the library.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, released once.
 */
void jd_string_free(char *s);

/**
 * Release a combination.
 *
 * # Safety
 * `x` must be NULL or a handle from this library, released once.
 */
void jd_combination_free(struct JdCombination *x);

/**
 * Release a quotient space.
 *
 * # Safety
 * `s` must be NULL or a handle from this library, released once.
 */
void jd_space_free(struct JdSpace *s);

/**
 * Release weight data.
 *
 * # Safety
 * `w` must be NULL or a handle from this library, released once.
 */
void jd_weights_free(struct JdWeights *w);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JACOBI_H */
