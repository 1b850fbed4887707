#ifndef POSET_ASSOC_H
#define POSET_ASSOC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  PA_STATUS_OK = 0,
  PA_STATUS_NULL_ARGUMENT = 1,
  PA_STATUS_INVALID_UTF8 = 2,
  PA_STATUS_BUFFER_TOO_SMALL = 3,
  PA_STATUS_PANIC = 4,
  PA_STATUS_DUPLICATE_ELEMENT = 10,
  PA_STATUS_UNKNOWN_ELEMENT = 11,
  PA_STATUS_CYCLIC_RELATION = 12,
  PA_STATUS_MALFORMED_INPUT = 13,
  PA_STATUS_EMPTY_COMPOSITION = 14,
  PA_STATUS_ELEMENT_NOT_FOUND = 15,
  PA_STATUS_LABEL_CLASH = 16,
  PA_STATUS_NOT_AUTONOMOUS = 17,
  PA_STATUS_TOO_LARGE = 18,
  PA_STATUS_DISCONNECTED_POSET = 19,
  PA_STATUS_TOO_SMALL = 20,
  PA_STATUS_NOT_A_TUBING = 21,
  PA_STATUS_STRUCTURE_VIOLATION = 22,
  PA_STATUS_MALFORMED_DECOMPOSITION = 23,
  PA_STATUS_IMAGE_NOT_A_TUBING = 24,
  PA_STATUS_QUOTIENT_NOT_POSET = 25,
} PaStatus;

/**
 * Opaque poset handle.
 */
typedef struct PaPoset PaPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *pa_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void pa_string_free(char *s);

/**
 * Parse `{"elements": [...], "relations": [[a, b], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
PaStatus pa_poset_from_json(const char *json, PaPoset **out);

/**
 * Complete graded poset with rank sizes `parts[0..len]`.
 *
 * # Safety
 * `parts` must point to `len` readable values; `out` must be writable.
 */
PaStatus pa_poset_complete_graded(const size_t *parts, size_t len, PaPoset **out);

/**
 * # Safety
 * `p` must be NULL or a handle from this library, not yet freed.
 */
void pa_poset_free(PaPoset *p);

/**
 * Number of elements; 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
size_t pa_poset_len(const PaPoset *p);

/**
 * Serialize to the poset file format. Free the result with `pa_string_free`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
PaStatus pa_poset_to_json(const PaPoset *p, char **out);

/**
 * Whether the comma-separated labels form an autonomous subset.
 *
 * # Safety
 * `p` must be a live handle, `labels` a NUL-terminated string, `out` writable.
 */
PaStatus pa_poset_is_autonomous(const PaPoset *p, const char *labels, bool *out);

/**
 * New handle with the order reversed inside the autonomous subset `labels`.
 *
 * # Safety
 * `p` must be a live handle, `labels` a NUL-terminated string, `out` writable.
 */
PaStatus pa_poset_flip(const PaPoset *p, const char *labels, PaPoset **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` writable.
 */
PaStatus pa_poset_is_isomorphic(const PaPoset *a, const PaPoset *b, bool *out);

/**
 * Whether the comparability graphs are isomorphic.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` writable.
 */
PaStatus pa_comparability_isomorphic(const PaPoset *a, const PaPoset *b, bool *out);

/**
 * f-vector `f_0 .. f_d` into `buf`. `*len` receives the length even when
 * `cap` is too small (status `BUFFER_TOO_SMALL`).
 *
 * # Safety
 * `p` live; `buf` writable for `cap` values; `len` writable.
 */
PaStatus pa_f_vector(const PaPoset *p, uint64_t *buf, size_t cap, size_t *len);

/**
 * h-vector `h_0 .. h_d`, same buffer protocol as `pa_f_vector`.
 *
 * # Safety
 * `p` live; `buf` writable for `cap` values; `len` writable.
 */
PaStatus pa_h_vector(const PaPoset *p, int64_t *buf, size_t cap, size_t *len);

/**
 * Number of proper tubings, the empty one included.
 *
 * # Safety
 * `p` live; `out` writable.
 */
PaStatus pa_tubing_count(const PaPoset *p, uint64_t *out);

/**
 * Image of a tubing (`{"tubes": [[..], ..]}`) under the flip map for the
 * subset `labels`, as a tubing of the flipped poset in the same format.
 *
 * # Safety
 * `p` live; `labels` and `tubing_json` NUL-terminated; `out` writable.
 */
PaStatus pa_flip_tubing_json(const PaPoset *p,
                             const char *labels,
                             const char *tubing_json,
                             char **out);

/**
 * Whether the two poset associahedra have isomorphic face lattices.
 *
 * # Safety
 * `a`, `b` live; `out` writable.
 */
PaStatus pa_lattices_equivalent(const PaPoset *a, const PaPoset *b, bool *out);

/**
 * Whether the poset associahedron of `p` is combinatorially the
 * permutohedron on `n` letters.
 *
 * # Safety
 * `p` live; `out` writable.
 */
PaStatus pa_equivalent_to_permutohedron(const PaPoset *p, size_t n, bool *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* POSET_ASSOC_H */
