#ifndef SURFMAPS_H
#define SURFMAPS_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SM_CLASS_ALL 0

#define SM_CLASS_CLOSED_2CELL 1

#define SM_CLASS_POLYHEDRAL 2

#define SM_CLASS_TRIANGULATION 3

#define SM_CLASS_FACE_IRREDUCIBLE 4

#define SM_CLASS_IRREDUCIBLE 5

// Position of a map in the embedding hierarchy.
typedef enum SmEmbeddingClass {
  SM_EMBEDDING_CLASS_OPEN = 0,
  SM_EMBEDDING_CLASS_CLOSED = 1,
  SM_EMBEDDING_CLASS_POLYHEDRAL = 2,
} SmEmbeddingClass;

// Result of every fallible call.
typedef enum SmStatus {
  SM_STATUS_OK = 0,
  SM_STATUS_NULL_ARGUMENT = 1,
  SM_STATUS_INVALID_MAP = 2,
  SM_STATUS_INVALID_ARGUMENT = 3,
  SM_STATUS_MISSING_SEEDS = 4,
  SM_STATUS_SEED_ERROR = 5,
  SM_STATUS_RESOURCE_LIMIT = 6,
  SM_STATUS_BUFFER_TOO_SMALL = 7,
  SM_STATUS_CALLBACK_ABORTED = 8,
  SM_STATUS_PANIC = 9,
} SmStatus;

// Opaque generator handle: a surface, a class filter and its seeds.
typedef struct SmGenerator SmGenerator;

// Opaque map handle.
typedef struct SmMap SmMap;

// Called once per generated map. Returning nonzero stops generation with
// [`SmStatus::CallbackAborted`]. The map is only valid during the call.
typedef int (*SmMapCallback)(void *ctx, const struct SmMap *map);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *sm_last_error_message(void);

// Builds a map from neighbour lists in rotation order. Vertex `v`'s
// neighbours are `neighbors[offsets[v] .. offsets[v + 1]]`, so `offsets`
// has `vertex_count + 1` entries. `twisted` holds `twisted_count` vertex
// pairs whose edges get signature -1.
//
// # Safety
// Every pointer must be valid for the lengths described above; `twisted`
// may be null when `twisted_count` is 0.
enum SmStatus sm_map_from_rotations(size_t vertex_count,
                                    const uint32_t *offsets,
                                    const uint32_t *neighbors,
                                    const uint32_t *twisted,
                                    size_t twisted_count,
                                    struct SmMap **out);

// Copies a map.
//
// # Safety
// `map` must be a live handle or null.
struct SmMap *sm_map_clone(const struct SmMap *map);

// # Safety
// `map` must be null or a handle not yet freed.
void sm_map_free(struct SmMap *map);

// # Safety
// `map` must be a live handle.
size_t sm_map_vertex_count(const struct SmMap *map);

// # Safety
// `map` must be a live handle.
size_t sm_map_edge_count(const struct SmMap *map);

// # Safety
// `map` must be a live handle.
size_t sm_map_face_count(const struct SmMap *map);

// Writes the surface's Euler characteristic and orientability (0 or 1).
//
// # Safety
// `map` must be a live handle; the out pointers must be writable.
enum SmStatus sm_map_surface(const struct SmMap *map,
                             int32_t *euler_characteristic,
                             uint8_t *orientable);

// # Safety
// `map` and `out` must be valid.
enum SmStatus sm_map_embedding_class(const struct SmMap *map, enum SmEmbeddingClass *out);

// 1 if the map is a triangulation, 0 otherwise (including a null handle).
//
// # Safety
// `map` must be a live handle or null.
int sm_map_is_triangulation(const struct SmMap *map);

// Writes the canonical code into `buf`. The required length is always
// stored in `len`; if `capacity` is too small nothing else is written and
// [`SmStatus::BufferTooSmall`] is returned. Two maps are isomorphic iff
// their codes are equal.
//
// # Safety
// `map` and `len` must be valid; `buf` must hold `capacity` bytes.
enum SmStatus sm_map_canonical_code(const struct SmMap *map,
                                    uint8_t *buf,
                                    size_t capacity,
                                    size_t *len);

// 1 if the maps are isomorphic (reflections included), 0 if not or if
// either handle is null.
//
// # Safety
// Both handles must be live or null.
int sm_map_is_isomorphic(const struct SmMap *a, const struct SmMap *b);

// Renders the map in the SMT text format. Release with
// [`sm_string_free`].
//
// # Safety
// `map` must be live; `name` must be a NUL-terminated string or null.
char *sm_map_to_smt(const struct SmMap *map, const char *name);

// # Safety
// `s` must come from this library and not be freed twice.
void sm_string_free(char *s);

// Creates a generator for one surface and class (one of the `SM_CLASS_*`
// constants). `seed_path` names an SMT file of irreducible triangulations;
// it may be null for the sphere and the projective plane.
//
// # Safety
// `seed_path` must be NUL-terminated or null; `out` must be writable.
enum SmStatus sm_generator_new(int32_t euler_characteristic,
                               uint8_t orientable,
                               uint32_t class_,
                               const char *seed_path,
                               struct SmGenerator **out);

// Worker threads for later runs; 0 uses all cores.
//
// # Safety
// `gen` must be a live handle.
enum SmStatus sm_generator_set_threads(struct SmGenerator *gen, size_t threads);

// # Safety
// `gen` must be null or a handle not yet freed.
void sm_generator_free(struct SmGenerator *gen);

// Generates every map with `n` vertices of the generator's class, calling
// `callback` for each, and stores the nine count-table cells in `counts`
// (irreducible, face-irreducible and maps, each as three columns). Cells
// the run did not compute are set to `UINT64_MAX`. `callback` and `counts`
// may be null.
//
// # Safety
// `gen` must be live; `counts` must hold 9 values when non-null.
enum SmStatus sm_generator_run(const struct SmGenerator *gen,
                               size_t n,
                               SmMapCallback callback,
                               void *ctx,
                               uint64_t *counts);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SURFMAPS_H */
