#ifndef STATESUM_H
#define STATESUM_H

/* Generated from the statesum-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible entry point.
typedef enum StatesumStatus {
  // Success.
  STATESUM_OK = 0,
  // Input could not be parsed or failed validation.
  STATESUM_ERR_INPUT = 2,
  // A resource limit (tensor entries, enumeration size) was exceeded.
  STATESUM_ERR_RESOURCE = 3,
  // Arithmetic failure, or disagreement between evaluation methods.
  STATESUM_ERR_MATH = 4,
  // A required pointer argument was null or not valid UTF-8.
  STATESUM_ERR_NULL_ARGUMENT = 5,
  // An internal invariant failed; the library state is still sound.
  STATESUM_ERR_INTERNAL = 6,
} StatesumStatus;

// An immutable Hopf algebra handle.
typedef struct StatesumAlgebra StatesumAlgebra;

// An immutable Heegaard diagram handle (crossing code or planar form).
typedef struct StatesumDiagram StatesumDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the message for the most recent failure on this thread. The
// pointer stays valid until the next statesum call on the same thread;
// do not free it. Empty string when the last call succeeded.
const char *statesum_last_error(void);

// Library version as a static string; do not free.
const char *statesum_version(void);

// Frees a string returned through a `char**` out-parameter.
//
// # Safety
// `s` must be null or a pointer previously returned by this library and
// not yet freed.
void statesum_string_free(char *s);

// Creates a built-in Hopf algebra: `ZmodGroupAlgebra(m)`, `S3GroupAlgebra`,
// `D4GroupAlgebra`, `Q8GroupAlgebra`, or `dual(...)` of these, over ring
// `"Q"` or `"F<p>"`.
//
// # Safety
// `name` and `ring` must be NUL-terminated strings; `out` must be a valid
// pointer to receive the handle.
enum StatesumStatus statesum_algebra_builtin(const char *name,
                                             const char *ring,
                                             struct StatesumAlgebra **out);

// Creates a Hopf algebra from its JSON description (structure constants,
// unit, counit, antipode); the data is validated before use.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be a valid pointer.
enum StatesumStatus statesum_algebra_from_json(const char *json, struct StatesumAlgebra **out);

// Writes the algebra's display name to `out`.
//
// # Safety
// `algebra` must be a live handle; `out` must be a valid pointer.
enum StatesumStatus statesum_algebra_name(const struct StatesumAlgebra *algebra, char **out);

// Runs the Hopf axiom checks on the algebra, reporting counts.
//
// # Safety
// `algebra` must be a live handle; `passed` and `failed` must be valid
// pointers.
enum StatesumStatus statesum_algebra_check(const struct StatesumAlgebra *algebra,
                                           size_t *passed,
                                           size_t *failed);

// Frees an algebra handle; null is ignored.
//
// # Safety
// `algebra` must be null or a live handle, and must not be used again.
void statesum_algebra_free(struct StatesumAlgebra *algebra);

// Creates a built-in diagram by catalog name (`s3_genus0`, `s3_genus1`,
// `s2xs1`, `lens(p,q)`, `l31_connsum_s2xs1`, `stab(...)`), in planar form
// so that every evaluation method is available.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be a valid pointer.
enum StatesumStatus statesum_diagram_builtin(const char *name, struct StatesumDiagram **out);

// Creates a diagram from JSON: a planar form (object with a `boxes` key)
// or a bare crossing code.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be a valid pointer.
enum StatesumStatus statesum_diagram_from_json(const char *json, struct StatesumDiagram **out);

// Frees a diagram handle; null is ignored.
//
// # Safety
// `diagram` must be null or a live handle, and must not be used again.
void statesum_diagram_free(struct StatesumDiagram *diagram);

// Computes the invariant of `diagram` over `algebra` and writes it to
// `out` as an exact field-element string. `method` is `"kuperberg"`,
// `"planar"`, or `"both"` (which cross-checks the two evaluations and
// fails with a math status on disagreement).
//
// # Safety
// `diagram` and `algebra` must be live handles, `method` a NUL-terminated
// string, and `out` a valid pointer.
enum StatesumStatus statesum_invariant(const struct StatesumDiagram *diagram,
                                       const struct StatesumAlgebra *algebra,
                                       const char *method,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STATESUM_H */
