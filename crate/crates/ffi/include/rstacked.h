/* C interface for the rstacked library. Generated by cbindgen; do not edit. */

#ifndef RSTACKED_H
#define RSTACKED_H

/* This file is regenerated by the crate's build script. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code for every call in this interface.
typedef enum RstackedStatus {
  // The call succeeded.
  RSTACKED_STATUS_OK = 0,
  // A required pointer argument was null.
  RSTACKED_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  RSTACKED_STATUS_INVALID_UTF8 = 2,
  // The facet text could not be parsed.
  RSTACKED_STATUS_PARSE_ERROR = 3,
  // The input was outside the operation's domain: an unknown family or
  // field name, an out-of-range index, or a complex of the wrong shape.
  RSTACKED_STATUS_DOMAIN_ERROR = 4,
  // A reconstruction search exceeded its node budget.
  RSTACKED_STATUS_BUDGET_EXCEEDED = 5,
} RstackedStatus;

// An immutable simplicial complex with its optional vertex labels.
typedef struct RstackedComplex RstackedComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message for the most recent failure on this thread. The pointer is
// valid until the next failing call on the same thread. Never null; the
// message is empty when no call has failed yet.
const char *rstacked_last_error_message(void);

// The library version as a static NUL-terminated string. Never freed.
const char *rstacked_version(void);

// Parses facet text (one facet per line, whitespace-separated vertex names,
// `#` comments) into a new complex handle.
//
// # Safety
// `text` must point to a NUL-terminated string; `out` must be a valid
// pointer to receive the handle.
enum RstackedStatus rstacked_complex_parse(const char *text, struct RstackedComplex **out);

// Builds a member of a named example family. `params` points to
// `params_len` numeric parameters in the family's order; `seed` is used
// only when `has_seed` is true (randomized families fall back to a fixed
// default seed otherwise).
//
// # Safety
// `family` must be NUL-terminated; `params` must point to `params_len`
// readable values (it may be null when `params_len` is 0); `out` must be
// valid.
enum RstackedStatus rstacked_complex_generate(const char *family,
                                              const size_t *params,
                                              size_t params_len,
                                              uint64_t seed,
                                              bool has_seed,
                                              struct RstackedComplex **out);

// Releases a complex handle. Null is ignored.
//
// # Safety
// `handle` must have come from this interface and not been freed already.
void rstacked_complex_free(struct RstackedComplex *handle);

// Releases a string returned through an out-parameter. Null is ignored.
//
// # Safety
// `text` must have come from this interface and not been freed already.
void rstacked_string_free(char *text);

// The dimension of the complex: -1 for `{∅}`, and the common facet
// dimension otherwise. Returns -2 when the handle is null.
//
// # Safety
// `handle` must be a live handle from this interface, or null.
int32_t rstacked_complex_dim(const struct RstackedComplex *handle);

// The number of vertices actually used by the complex. Returns 0 for a
// null handle.
//
// # Safety
// `handle` must be a live handle from this interface, or null.
size_t rstacked_complex_vertex_count(const struct RstackedComplex *handle);

// The number of facets. Returns 0 for a null handle.
//
// # Safety
// `handle` must be a live handle from this interface, or null.
size_t rstacked_complex_facet_count(const struct RstackedComplex *handle);

// Renders the facets, one per line with numeric vertex names, into a new
// string.
//
// # Safety
// `handle` must be a live handle from this interface; `out` must be valid.
enum RstackedStatus rstacked_complex_facet_text(const struct RstackedComplex *handle, char **out);

// Computes the boundary complex of a homology manifold with boundary.
// `field` selects the coefficient field (`rat`, `gf2`, or `gf:<p>`); null
// applies the automatic policy. Closed complexes are a domain error.
//
// # Safety
// `handle` must be a live handle; `field` must be NUL-terminated or null;
// `out` must be valid.
enum RstackedStatus rstacked_complex_boundary(const struct RstackedComplex *handle,
                                              const char *field,
                                              struct RstackedComplex **out);

// Computes the candidate complex whose faces of dimension at most
// `r` come from the input and whose larger faces are filled in wherever no
// small missing face blocks them. `node_budget` caps the search; 0 selects
// the default budget.
//
// # Safety
// `handle` must be a live handle; `out` must be valid.
enum RstackedStatus rstacked_complex_reconstruction(const struct RstackedComplex *handle,
                                                    size_t r,
                                                    size_t node_budget,
                                                    struct RstackedComplex **out);

// Runs the full analysis and returns the report as a JSON document.
// `field` selects the coefficient field (null for the automatic policy);
// `max_r` caps the stackedness table (0 for the default cap).
//
// # Safety
// `handle` must be a live handle; `field` must be NUL-terminated or null;
// `out` must be valid.
enum RstackedStatus rstacked_analyze_json(const struct RstackedComplex *handle,
                                          const char *field,
                                          size_t max_r,
                                          char **out);

// Tests r-stackedness. `mode` is `"auto"`, `"closed"`, or
// `"with-boundary"`: closed complexes use the closed-manifold test at
// index `r`, bordered ones the interior-face test at level `r - 1`, and
// auto picks whichever applies. The verdict lands in `out_verdict`.
//
// # Safety
// `handle` must be a live handle; `mode` must be NUL-terminated; `field`
// must be NUL-terminated or null; `out_verdict` must be valid.
enum RstackedStatus rstacked_check_stacked(const struct RstackedComplex *handle,
                                           size_t r,
                                           const char *mode,
                                           const char *field,
                                           bool *out_verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RSTACKED_H */
