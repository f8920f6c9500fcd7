#ifndef CHEEGER_H
#define CHEEGER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CheegerStatus {
  CHEEGER_STATUS_OK = 0,
  CHEEGER_STATUS_NULL_POINTER = 1,
  CHEEGER_STATUS_INVALID_UTF8 = 2,
  CHEEGER_STATUS_PARSE = 3,
  CHEEGER_STATUS_INVALID_GRAPH = 4,
  CHEEGER_STATUS_INVALID_ARGUMENT = 5,
  CHEEGER_STATUS_HYPOTHESIS = 6,
  CHEEGER_STATUS_NO_CONVERGENCE = 7,
  /**
   * The exact search ran out of states; outputs hold the best labeling
   * found, which is only an upper bound.
   */
  CHEEGER_STATUS_BUDGET_EXCEEDED = 8,
  CHEEGER_STATUS_BUFFER_TOO_SMALL = 9,
  CHEEGER_STATUS_NOT_GENERIC = 10,
  CHEEGER_STATUS_IO = 11,
  CHEEGER_STATUS_PANIC = 12,
} CheegerStatus;

/**
 * Opaque graph handle.
 */
typedef struct CheegerGraph CheegerGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a graph from JSON or edge-list text.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must point to writable
 * storage for one handle pointer.
 */
enum CheegerStatus cheeger_graph_parse(const char *text, struct CheegerGraph **out);

/**
 * Builds a member of a named family (`gn`, `path`, `cycle`, `star`,
 * `complete`, `random_tree`, `random_connected`, `random_bipartite`) with
 * default parameters.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must point to writable
 * storage for one handle pointer.
 */
enum CheegerStatus cheeger_graph_generate(const char *family,
                                          size_t n,
                                          uint64_t seed,
                                          struct CheegerGraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `graph` must come from this library and not be used afterwards.
 */
void cheeger_graph_free(struct CheegerGraph *graph);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t cheeger_graph_vertex_count(const struct CheegerGraph *graph);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t cheeger_graph_edge_count(const struct CheegerGraph *graph);

/**
 * Cyclomatic number `|E| - |V| + c`.
 *
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum CheegerStatus cheeger_graph_cyclomatic(const struct CheegerGraph *graph, size_t *out);

/**
 * Writes the `n` normalized Laplacian eigenvalues, ascending, to
 * `values[0..n]`. `len` is the capacity of `values`.
 *
 * # Safety
 * `graph` must be a live handle and `values` valid for `len` writes.
 */
enum CheegerStatus cheeger_laplacian_spectrum(const struct CheegerGraph *graph,
                                              double *values,
                                              size_t len);

/**
 * Conductance of the vertex set `set[0..len]`.
 *
 * # Safety
 * `graph` must be a live handle, `set` valid for `len` reads, `out`
 * writable.
 */
enum CheegerStatus cheeger_conductance(const struct CheegerGraph *graph,
                                       const size_t *set,
                                       size_t len,
                                       double *out);

/**
 * Exact k-way Cheeger constant. When `labels` is not null it receives `n`
 * entries: the 1-based part of each vertex, 0 for vertices in no part.
 * `max_states = 0` selects the default budget.
 *
 * # Safety
 * `graph` must be a live handle, `value` writable, `labels` null or valid
 * for `n` writes.
 */
enum CheegerStatus cheeger_rho(const struct CheegerGraph *graph,
                               size_t k,
                               uint64_t max_states,
                               double *value,
                               uint32_t *labels);

/**
 * Exact signed k-way Cheeger constant. `labels` entries are `2i - 1` / `2i`
 * for side 1 / side 2 of pair `i`, 0 outside every pair.
 *
 * # Safety
 * As [`cheeger_rho`].
 */
enum CheegerStatus cheeger_rho_signed(const struct CheegerGraph *graph,
                                      size_t k,
                                      uint64_t max_states,
                                      double *value,
                                      uint32_t *labels);

/**
 * Number of strong nodal domains of `f[0..len]`, with entries below
 * `1e-10 max|f|` treated as zero.
 *
 * # Safety
 * `graph` must be a live handle, `f` valid for `len` reads, `out` writable.
 */
enum CheegerStatus cheeger_strong_nodal_count(const struct CheegerGraph *graph,
                                              const double *f,
                                              size_t len,
                                              size_t *out);

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *cheeger_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEEGER_H */
