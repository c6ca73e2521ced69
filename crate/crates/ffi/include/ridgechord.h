#ifndef RIDGECHORD_H
#define RIDGECHORD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. Decision procedures report `RC_STATUS_OK` for a
 * verified property, `RC_STATUS_REFUTED` for a disproved one and
 * `RC_STATUS_UNKNOWN` when the search budget ran out.
 */
typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_REFUTED = 1,
  RC_STATUS_UNKNOWN = 2,
  RC_STATUS_INVALID_ARGUMENT = 3,
  RC_STATUS_PARSE_ERROR = 4,
  RC_STATUS_IO_ERROR = 5,
  RC_STATUS_LIMIT_EXCEEDED = 6,
  RC_STATUS_NULL_POINTER = 7,
  RC_STATUS_INTERNAL = 8,
} RcStatus;

/**
 * Opaque simplicial complex.
 */
typedef struct RcComplex RcComplex;

typedef struct RcStats {
  size_t ground_set_size;
  int64_t dimension;
  size_t facet_count;
  size_t vertex_count;
  bool is_pure;
} RcStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread; not to be freed.
 */
const char *rc_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library, freed once.
 */
void rc_string_free(char *s);

/**
 * Releases a complex handle.
 *
 * # Safety
 * `cx` must be null or a handle obtained from this library, freed once.
 */
void rc_complex_free(struct RcComplex *cx);

/**
 * Builds a complex on `{1..n}` from a flat facet list; non-maximal entries
 * are dropped.
 *
 * # Safety
 * `lengths` must point to `facet_count` sizes and `vertices` to their sum
 * of labels; `out` must be writable.
 */
enum RcStatus rc_complex_from_facets(size_t n,
                                     const uint32_t *vertices,
                                     const size_t *lengths,
                                     size_t facet_count,
                                     struct RcComplex **out);

/**
 * Parses the text facet-list format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum RcStatus rc_complex_parse(const char *text, struct RcComplex **out);

/**
 * Writes the text facet-list form into `*out`.
 *
 * # Safety
 * `cx` must be a live handle; `out` must be writable.
 */
enum RcStatus rc_complex_to_text(const struct RcComplex *cx, char **out);

/**
 * Hex SHA-256 of the text form.
 *
 * # Safety
 * `cx` must be a live handle; `out` must be writable.
 */
enum RcStatus rc_complex_digest(const struct RcComplex *cx, char **out);

/**
 * # Safety
 * `cx` must be a live handle; `out` must be writable.
 */
enum RcStatus rc_complex_stats(const struct RcComplex *cx, struct RcStats *out);

/**
 * The 2-complex C₂ on 7 vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum RcStatus rc_build_c2(struct RcComplex **out);

/**
 * `k` copies of C₂ glued along the free ridge.
 *
 * # Safety
 * `out` must be writable.
 */
enum RcStatus rc_build_delta(size_t k, struct RcComplex **out);

/**
 * # Safety
 * `cx` must be a live handle; `out` must be writable.
 */
enum RcStatus rc_clique_complex(const struct RcComplex *cx, struct RcComplex **out);

/**
 * # Safety
 * `cx` must be a live handle; `out` must be writable.
 */
enum RcStatus rc_alexander_dual(const struct RcComplex *cx, struct RcComplex **out);

/**
 * Exhaustive ridge-chordality. `explored`, if non-null, receives the number
 * of visited states.
 *
 * # Safety
 * `cx` must be a live handle; `explored` must be null or writable.
 */
enum RcStatus rc_check_ridge_chordal(const struct RcComplex *cx,
                                     uint64_t budget,
                                     uint64_t *explored);

/**
 * Checks that a flat facet list is a complete shelling of `cx`.
 *
 * # Safety
 * `cx` must be a live handle; the order arrays follow the flat layout.
 */
enum RcStatus rc_check_shelling(const struct RcComplex *cx,
                                const uint32_t *vertices,
                                const size_t *lengths,
                                size_t facet_count);

/**
 * Searches for a shelling; on success `*order_json` (if `order_json` is
 * non-null) receives the order as a JSON array of facets.
 *
 * # Safety
 * `cx` must be a live handle; `order_json` must be null or writable.
 */
enum RcStatus rc_find_shelling(const struct RcComplex *cx, uint64_t budget, char **order_json);

/**
 * k-decomposability search; on success `*cert_json` (if non-null) receives
 * the certificate.
 *
 * # Safety
 * `cx` must be a live handle; `cert_json` must be null or writable.
 */
enum RcStatus rc_check_k_decomposable(const struct RcComplex *cx,
                                      size_t k,
                                      uint64_t budget,
                                      char **cert_json);

/**
 * Reduced homology as JSON. Returns `RC_STATUS_OK` when every reduced group
 * vanishes and `RC_STATUS_REFUTED` otherwise.
 *
 * # Safety
 * `cx` must be a live handle; `profile_json` must be null or writable.
 */
enum RcStatus rc_reduced_homology(const struct RcComplex *cx, char **profile_json);

/**
 * Runs the staged 4-decomposability certification for `k ≥ 2`.
 *
 * # Safety
 * `report_json` must be null or writable.
 */
enum RcStatus rc_theorem_a(size_t k, uint64_t budget, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIDGECHORD_H */
