#ifndef LATRES_H
#define LATRES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LatresBoundary {
  LATRES_BOUNDARY_PERIODIC = 0,
  LATRES_BOUNDARY_FREE = 1,
  LATRES_BOUNDARY_DIRICHLET_DIRICHLET = 2,
  LATRES_BOUNDARY_DIRICHLET_NEUMANN = 3,
} LatresBoundary;

typedef enum LatresMethod {
  // Cheapest closed form.
  LATRES_METHOD_FAST = 0,
  // Mode double sum.
  LATRES_METHOD_DOUBLE = 1,
  // Dense Kirchhoff solve.
  LATRES_METHOD_ORACLE = 2,
} LatresMethod;

typedef enum LatresNodeKind {
  LATRES_NODE_KIND_GRID = 0,
  // Hub of a cobweb or fan, or the globe's pole O.
  LATRES_NODE_KIND_POLE_SOUTH = 1,
  // The globe's pole O'.
  LATRES_NODE_KIND_POLE_NORTH = 2,
} LatresNodeKind;

typedef enum LatresStatus {
  LATRES_STATUS_OK = 0,
  LATRES_STATUS_INVALID_ARGUMENT = 1,
  LATRES_STATUS_DISCONNECTED = 2,
  LATRES_STATUS_PARSE_ERROR = 3,
  LATRES_STATUS_NULL_POINTER = 4,
  LATRES_STATUS_BUFFER_TOO_SMALL = 5,
  LATRES_STATUS_PANIC = 6,
} LatresStatus;

typedef enum LatresTopology {
  LATRES_TOPOLOGY_FREE_RECT = 0,
  LATRES_TOPOLOGY_CYLINDER = 1,
  LATRES_TOPOLOGY_TORUS = 2,
  LATRES_TOPOLOGY_COBWEB = 3,
  LATRES_TOPOLOGY_FAN = 4,
  LATRES_TOPOLOGY_GLOBE = 5,
} LatresTopology;

// Opaque lattice handle.
typedef struct LatresLattice LatresLattice;

// A node reference. `x` and `y` are 1-based and only read for grid nodes.
typedef struct LatresNode {
  enum LatresNodeKind kind;
  size_t x;
  size_t y;
} LatresNode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *latres_version(void);

// Message for the last failed call on this thread, or null if none. The
// pointer stays valid until the next failing call on the same thread.
const char *latres_last_error_message(void);

// Creates a lattice handle. `m` rows, `n` columns, bond resistances `r`
// (x direction) and `s` (y direction) in ohms.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle pointer.
enum LatresStatus latres_lattice_new(enum LatresTopology topology,
                                     size_t m,
                                     size_t n,
                                     double r,
                                     double s,
                                     struct LatresLattice **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `lattice` must be null or a handle from [`latres_lattice_new`] not yet freed.
void latres_lattice_free(struct LatresLattice *lattice);

// Number of nodes, poles included.
//
// # Safety
// `lattice` must be a live handle and `out` writable.
enum LatresStatus latres_lattice_node_count(const struct LatresLattice *lattice, size_t *out);

// Flat node index used by edge-list export.
//
// # Safety
// `lattice` must be a live handle and `out` writable.
enum LatresStatus latres_node_index(const struct LatresLattice *lattice,
                                    struct LatresNode node,
                                    size_t *out);

// Inverse of [`latres_node_index`].
//
// # Safety
// `lattice` must be a live handle and `out` writable.
enum LatresStatus latres_node_at(const struct LatresLattice *lattice,
                                 size_t index,
                                 struct LatresNode *out);

// Two-point resistance in ohms between `a` and `b`.
//
// # Safety
// `lattice` must be a live handle and `out` writable.
enum LatresStatus latres_resistance(const struct LatresLattice *lattice,
                                    struct LatresNode a,
                                    struct LatresNode b,
                                    enum LatresMethod method,
                                    double *out);

// Kirchhoff index of the lattice (sum of resistances over node pairs).
//
// # Safety
// `lattice` must be a live handle and `out` writable.
enum LatresStatus latres_kirchhoff_index(const struct LatresLattice *lattice, double *out);

// Kirchhoff index of an arbitrary network given as edge-list text
// (`T=<n>` header, then `i j conductance` lines).
//
// # Safety
// `edge_list` must be a NUL-terminated string and `out` writable.
enum LatresStatus latres_kirchhoff_index_edge_list(const char *edge_list, double *out);

// Eigenvalues of the `size`-site chain Laplacian, in mode order. Writes
// `size` values to `buf` when `capacity >= size`; `required` (if non-null)
// always receives `size`. Returns `BufferTooSmall` otherwise.
//
// # Safety
// `buf` must be valid for `capacity` writes; `required` null or writable.
enum LatresStatus latres_spectrum_eigenvalues(enum LatresBoundary kind,
                                              size_t size,
                                              double *buf,
                                              size_t capacity,
                                              size_t *required);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATRES_H */
