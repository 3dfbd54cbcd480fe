#ifndef SILTING_CAPI_H
#define SILTING_CAPI_H

/* This header is generated by cbindgen from the silting-capi crate. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes mirroring the CLI exit codes.
typedef enum SiltStatus {
  SILT_STATUS_OK = 0,
  // Mathematical failure (not rigid, no silting completion, ...).
  SILT_STATUS_MATH = 1,
  // Malformed input, unknown handle, bad UTF-8.
  SILT_STATUS_INPUT = 2,
  // A configured cap was exceeded; graph output is still produced.
  SILT_STATUS_CAP_EXCEEDED = 3,
  // A null pointer where one is not allowed.
  SILT_STATUS_NULL_ARGUMENT = 4,
  // An internal invariant failed.
  SILT_STATUS_INTERNAL = 5,
} SiltStatus;

// Opaque workspace handle.
typedef struct SiltWorkspace SiltWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message for this thread; empty when no error occurred.
// The pointer stays valid until the next call into the library.
const char *silt_last_error(void);

// Release a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must have been returned by a `silt_*` function and not yet freed.
void silt_string_free(char *s);

// Parse a bundle document into a workspace.
//
// `field_override` may be null, or `"p"`, `"Q"`, or a prime written in
// decimal. Caps of 0 select the defaults.
//
// # Safety
// `bundle_json` must point to a NUL-terminated string; `out` must be a
// valid pointer to receive the workspace.
enum SiltStatus silt_workspace_new(const char *bundle_json,
                                   const char *field_override,
                                   uint64_t seed,
                                   uint64_t cap_vertices,
                                   uint64_t cap_pool,
                                   struct SiltWorkspace **out);

// Destroy a workspace. Null is a no-op.
//
// # Safety
// `ws` must have been returned by `silt_workspace_new` and not yet freed.
void silt_workspace_free(struct SiltWorkspace *ws);

// Dimension of the algebra over its field.
//
// # Safety
// `ws` is a live workspace; `out` receives the dimension.
enum SiltStatus silt_algebra_dim(const struct SiltWorkspace *ws, uint64_t *out);

// Algebra summary (dimension, basis, Hom-projective table) as JSON.
//
// # Safety
// `ws` is a live workspace; `out` receives a string to free with
// `silt_string_free`.
enum SiltStatus silt_algebra_info_json(const struct SiltWorkspace *ws, char **out);

// dim E(f1, f2) for two presentation handles.
//
// # Safety
// `ws` live, `f1`/`f2` NUL-terminated handles, `out` valid.
enum SiltStatus silt_e_dim(const struct SiltWorkspace *ws,
                           const char *f1,
                           const char *f2,
                           int64_t *out);

// Rigidity of a presentation handle: writes 1 or 0.
//
// # Safety
// `ws` live, `pres` NUL-terminated, `out` valid.
enum SiltStatus silt_is_rigid(const struct SiltWorkspace *ws, const char *pres, int32_t *out);

// Mutate a silting presentation handle at one summand; returns the new
// object with its exchange data as JSON.
//
// # Safety
// `ws` live, `pres` NUL-terminated, `out` receives a string to free with
// `silt_string_free`.
enum SiltStatus silt_mutate_json(const struct SiltWorkspace *ws,
                                 const char *pres,
                                 uint32_t summand,
                                 char **out);

// Exchange graph as JSON. Returns CapExceeded (with partial output) when
// the vertex cap fired.
//
// # Safety
// `ws` live, `out` receives a string to free with `silt_string_free`.
enum SiltStatus silt_graph_json(const struct SiltWorkspace *ws, char **out);

// Exchange graph in DOT format; same cap semantics as `silt_graph_json`.
//
// # Safety
// `ws` live, `out` receives a string to free with `silt_string_free`.
enum SiltStatus silt_graph_dot(const struct SiltWorkspace *ws, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SILTING_CAPI_H */
