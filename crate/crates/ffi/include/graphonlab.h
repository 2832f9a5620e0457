/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef GRAPHONLAB_H
#define GRAPHONLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call.
 */
typedef enum GlStatus {
  GL_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  GL_STATUS_NULL_POINTER = 1,
  /*
   Malformed or out-of-domain input.
   */
  GL_STATUS_INVALID = 2,
  /*
   The request exceeds what exhaustive methods support.
   */
  GL_STATUS_CAPACITY = 3,
  /*
   The result could not be decided at the requested size.
   */
  GL_STATUS_INCONCLUSIVE = 4,
  /*
   File access failed.
   */
  GL_STATUS_IO = 5,
  /*
   The output buffer is too small; `needed` holds the required size.
   */
  GL_STATUS_BUFFER_TOO_SMALL = 6,
  /*
   An internal error; the library state is unaffected.
   */
  GL_STATUS_INTERNAL = 7,
} GlStatus;

/*
 An undirected simple graph on at most 64 vertices.
 */
typedef struct GlGraph GlGraph;

/*
 A step graphon.
 */
typedef struct GlGraphon GlGraphon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call on this thread.
 */
const char *gl_last_error(void);

/*
 Library version as a static string.
 */
const char *gl_version(void);

/*
 Decodes one graph6 line.

 # Safety
 `code` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_graph_from_graph6(const char *code, struct GlGraph **out);

/*
 Writes the graph6 code of `g` into `buf`.

 # Safety
 `g` must be a live handle; `buf` must hold `len` bytes; `needed` may be null.
 */
enum GlStatus gl_graph_to_graph6(const struct GlGraph *g, char *buf, size_t len, size_t *needed);

/*
 Number of vertices, or 0 for a null handle.

 # Safety
 `g` must be null or a live handle.
 */
size_t gl_graph_vertex_count(const struct GlGraph *g);

/*
 Whether `u` and `v` are adjacent.

 # Safety
 `g` must be a live handle and `out` a valid pointer.
 */
enum GlStatus gl_graph_has_edge(const struct GlGraph *g, size_t u, size_t v, bool *out);

/*
 Canonical representative of the isomorphism class of `g`.

 # Safety
 `g` must be a live handle and `out` a valid pointer.
 */
enum GlStatus gl_graph_canonical(const struct GlGraph *g, struct GlGraph **out);

/*
 Releases a graph; null is ignored.

 # Safety
 `g` must be null or a handle not yet freed.
 */
void gl_graph_free(struct GlGraph *g);

/*
 Builds a graphon from a literal such as `wrs:2,0` or `@file.json`.

 # Safety
 `literal` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_graphon_make(const char *literal, struct GlGraphon **out);

/*
 Parses a graphon JSON document.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_graphon_from_json(const char *json, struct GlGraphon **out);

/*
 The graphon `W_G` of a graph.

 # Safety
 `g` must be a live handle and `out` a valid pointer.
 */
enum GlStatus gl_graphon_from_graph(const struct GlGraph *g, struct GlGraphon **out);

/*
 Writes the JSON document of `w` into `buf`.

 # Safety
 `w` must be a live handle; `buf` must hold `len` bytes; `needed` may be null.
 */
enum GlStatus gl_graphon_to_json(const struct GlGraphon *w, char *buf, size_t len, size_t *needed);

/*
 Number of blocks, or 0 for a null handle.

 # Safety
 `w` must be null or a live handle.
 */
size_t gl_graphon_block_count(const struct GlGraphon *w);

/*
 Releases a graphon; null is ignored.

 # Safety
 `w` must be null or a handle not yet freed.
 */
void gl_graphon_free(struct GlGraphon *w);

/*
 Entropy `Ent(W)` in bits.

 # Safety
 `w` must be a live handle and `out` a valid pointer.
 */
enum GlStatus gl_graphon_entropy(const struct GlGraphon *w, double *out);

/*
 Edge density `t(K_2; W)`.

 # Safety
 `w` must be a live handle and `out` a valid pointer.
 */
enum GlStatus gl_graphon_edge_density(const struct GlGraphon *w, double *out);

/*
 Probability that `G(n, W)` on `n = |V(h)|` vertices equals the labelled graph `h`.

 # Safety
 `h` and `w` must be live handles and `out` a valid pointer.
 */
enum GlStatus gl_p_induced(const struct GlGraph *h, const struct GlGraphon *w, double *out);

/*
 Draws `G(n, W)` with the given seed.

 # Safety
 `w` must be a live handle and `out` a valid pointer.
 */
enum GlStatus gl_graphon_sample(const struct GlGraphon *w,
                                size_t n,
                                uint64_t seed,
                                struct GlGraph **out);

/*
 Labelled cut distance `d_box(u, v)`.

 # Safety
 `u` and `v` must be live handles and `out` a valid pointer.
 */
enum GlStatus gl_d_box(const struct GlGraphon *u, const struct GlGraphon *v, double *out);

/*
 Exact member counts of a named class on `n <= 8` vertices.

 # Safety
 `class_name` must be a NUL-terminated string; `labelled` and `unlabelled` valid pointers.
 */
enum GlStatus gl_census(const char *class_name, size_t n, uint64_t *labelled, uint64_t *unlabelled);

/*
 Colouring number estimate. `s_witness` receives `SIZE_MAX` when no
 `C(t, u)` is contained.

 # Safety
 `class_name` must be a NUL-terminated string; the outputs valid pointers.
 */
enum GlStatus gl_colouring_number(const char *class_name,
                                  size_t t_max,
                                  size_t n_check,
                                  size_t *r_hat,
                                  size_t *s_witness,
                                  bool *at_cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHONLAB_H */
