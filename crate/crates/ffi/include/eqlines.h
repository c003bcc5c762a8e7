#ifndef EQLINES_H
#define EQLINES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EqStatus {
  EQ_STATUS_OK = 0,
  EQ_STATUS_NULL_POINTER = 1,
  EQ_STATUS_INVALID_ARGUMENT = 2,
  EQ_STATUS_PARSE = 3,
  EQ_STATUS_DISCONNECTED = 4,
  EQ_STATUS_NOT_PRIME = 5,
  EQ_STATUS_BUDGET_EXCEEDED = 6,
  EQ_STATUS_NUMERIC = 7,
  EQ_STATUS_BUFFER_TOO_SMALL = 8,
  // `N_α(d)` has no closed form for this angle.
  EQ_STATUS_UNBOUNDED = 9,
  EQ_STATUS_PANIC = 10,
} EqStatus;

// Graph handle.
typedef struct EqGraph EqGraph;

// Line family handle.
typedef struct EqLineFamily EqLineFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next failing call on the same thread.
const char *eq_last_error(void);

// # Safety
// `s` must come from this library or be null.
void eq_string_free(char *s);

// Parse a graph from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum EqStatus eq_graph_from_json(const char *json, struct EqGraph **out);

// `kind` is one of `complete`, `path`, `cycle`, `empty`, `star`.
//
// # Safety
// `kind` must be a NUL-terminated string; `out` must be writable.
enum EqStatus eq_graph_named(const char *kind, size_t k, struct EqGraph **out);

// # Safety
// `g` must come from this library or be null.
void eq_graph_free(struct EqGraph *g);

// Number of vertices, 0 for a null handle.
//
// # Safety
// `g` must be a live handle or null.
size_t eq_graph_order(const struct EqGraph *g);

// # Safety
// `g` must be a live handle or null.
size_t eq_graph_edge_count(const struct EqGraph *g);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum EqStatus eq_graph_to_json(const struct EqGraph *g, char **out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum EqStatus eq_graph_lambda1(const struct EqGraph *g, double *out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum EqStatus eq_graph_lambda2(const struct EqGraph *g, double *out);

// Adjacency eigenvalues in descending order. `*len` is always set to the
// number of eigenvalues, so a call with `cap = 0` queries the size.
//
// # Safety
// `buf` must hold `cap` doubles; `len` must be writable.
enum EqStatus eq_graph_spectrum(const struct EqGraph *g, double *buf, size_t cap, size_t *len);

// Members of an `r`-net grown from `root`.
//
// # Safety
// `buf` must hold `cap` entries; `len` must be writable.
enum EqStatus eq_graph_r_net(const struct EqGraph *g,
                             size_t r,
                             size_t root,
                             size_t *buf,
                             size_t cap,
                             size_t *len);

// Spectral radius order of `λ = (1 − α)/(2α)` for a rational `alpha`
// such as `"1/3"`. On success `*k` is set and, if `witness` is non-null,
// a witness graph is returned through it. A search that exhausts `n_max`
// returns `BudgetExceeded`.
//
// # Safety
// `alpha` must be a NUL-terminated string; `k` must be writable;
// `witness` may be null.
enum EqStatus eq_korder(const char *alpha, size_t n_max, size_t *k, struct EqGraph **witness);

// Largest known family of equiangular lines in `R^d` at angle `arccos α`.
//
// # Safety
// `alpha` must be a NUL-terminated string; `out` must be writable.
enum EqStatus eq_construct(const char *alpha, size_t d, size_t n_max, struct EqLineFamily **out);

// Parse a family from the CSV form written by `eq_family_to_csv`.
//
// # Safety
// `csv` must be a NUL-terminated string; `out` must be writable.
enum EqStatus eq_family_from_csv(const char *csv, struct EqLineFamily **out);

// # Safety
// `f` must be a live handle; `out` must be writable.
enum EqStatus eq_family_to_csv(const struct EqLineFamily *f, char **out);

// # Safety
// `f` must come from this library or be null.
void eq_family_free(struct EqLineFamily *f);

// Number of lines, 0 for a null handle.
//
// # Safety
// `f` must be a live handle or null.
size_t eq_family_len(const struct EqLineFamily *f);

// Ambient dimension, 0 for a null handle.
//
// # Safety
// `f` must be a live handle or null.
size_t eq_family_dim(const struct EqLineFamily *f);

// Unit vectors, row-major, `len × dim` doubles.
//
// # Safety
// `buf` must hold `cap` doubles; `len` must be writable.
enum EqStatus eq_family_vectors(const struct EqLineFamily *f, double *buf, size_t cap, size_t *len);

// Sets `*valid` to 1 when every vector is a unit vector and every pair
// has inner product `±α` within `tol`, 0 otherwise.
//
// # Safety
// `f` must be a live handle; `valid` must be writable.
enum EqStatus eq_family_verify(const struct EqLineFamily *f, double tol, int32_t *valid);

// Certified upper bound on the multiplicity of `lambda` in a connected
// graph, along with the measured multiplicity.
//
// # Safety
// `g` must be a live handle; `bound` and `measured` must be writable.
enum EqStatus eq_mult_bound(const struct EqGraph *g,
                            double lambda,
                            size_t r,
                            size_t s,
                            size_t *bound,
                            size_t *measured);

// Cayley graph of `Aff(F_p)` with its shift edges subdivided into paths
// of `length` edges; `length = 0` picks `⌈log₂ p⌉`.
//
// # Safety
// `out` must be writable.
enum EqStatus eq_cayley_aff(uint64_t p, size_t length, struct EqGraph **out);

uint64_t eq_gerzon_bound(uint64_t d);

// `N_α(d)` from the spectral radius order. Angles without a finite order
// return `Unbounded`.
//
// # Safety
// `alpha` must be a NUL-terminated string; `out` must be writable.
enum EqStatus eq_n_alpha(const char *alpha, uint64_t d, size_t n_max, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQLINES_H */
