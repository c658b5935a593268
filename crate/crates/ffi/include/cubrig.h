#ifndef CUBRIG_H
#define CUBRIG_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum CubrigStatus {
  CUBRIG_STATUS_OK = 0,
  CUBRIG_STATUS_NULL_ARGUMENT = 1,
  CUBRIG_STATUS_INVALID_UTF8 = 2,
  CUBRIG_STATUS_INVALID_INPUT = 3,
  CUBRIG_STATUS_NOT_IN_BOX_CATEGORY = 4,
  CUBRIG_STATUS_GUARD_EXCEEDED = 5,
  CUBRIG_STATUS_LOOP_DETECTED = 6,
  CUBRIG_STATUS_OVERFLOW = 7,
  CUBRIG_STATUS_PANIC = 8,
} CubrigStatus;

// A finite cubical set.
typedef struct CubrigComplex CubrigComplex;

// A finite poset.
typedef struct CubrigPoset CubrigPoset;

// A truncated simplicial set.
typedef struct CubrigSSet CubrigSSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next call into the library from the same thread.
const char *cubrig_last_error(void);

// Library version as a static string.
const char *cubrig_version(void);

void cubrig_string_free(char *s);

// Builds a named complex such as `cube:3`, `open-box:3:1:0` or `k`.
enum CubrigStatus cubrig_complex_build(const char *spec, struct CubrigComplex **out);

// Reads a complex from the JSON produced by [`cubrig_complex_to_json`].
enum CubrigStatus cubrig_complex_from_json(const char *json, struct CubrigComplex **out);

void cubrig_complex_free(struct CubrigComplex *c);

enum CubrigStatus cubrig_complex_dim(const struct CubrigComplex *c, uintptr_t *out);

// Number of nondegenerate cells of dimension `k`.
enum CubrigStatus cubrig_complex_cell_count(const struct CubrigComplex *c,
                                            uintptr_t k,
                                            uintptr_t *out);

// Checks the cubical identities. `out` is true when none fail.
enum CubrigStatus cubrig_complex_validate(const struct CubrigComplex *c, bool *out);

enum CubrigStatus cubrig_complex_to_json(const struct CubrigComplex *c, char **out);

// Number of paths between two vertices, given by name (or `alpha`/`omega`
// for builtins with cube coordinates).
enum CubrigStatus cubrig_complex_path_count(const struct CubrigComplex *c,
                                            const char *from,
                                            const char *to,
                                            uintptr_t *out);

// The weak Bruhat order on permutations of `{1..n}`.
enum CubrigStatus cubrig_poset_bruhat(uintptr_t n, struct CubrigPoset **out);

// Ordered partitions of `{1..n+1}`: `variant` 0 for all of them, 1 without
// the one-block partition, 2 also without `({1..n};{n+1})`.
enum CubrigStatus cubrig_poset_partitions(uintptr_t n, uint32_t variant, struct CubrigPoset **out);

void cubrig_poset_free(struct CubrigPoset *p);

enum CubrigStatus cubrig_poset_len(const struct CubrigPoset *p, uintptr_t *out);

enum CubrigStatus cubrig_poset_leq(const struct CubrigPoset *p,
                                   uintptr_t x,
                                   uintptr_t y,
                                   bool *out);

enum CubrigStatus cubrig_poset_to_dot(const struct CubrigPoset *p, char **out);

// Nerve truncated at `top`, or one above the longest chain when `top < 0`.
enum CubrigStatus cubrig_poset_nerve(const struct CubrigPoset *p,
                                     int64_t top,
                                     struct CubrigSSet **out);

// Rigidification mapping space of a named complex between two vertices.
enum CubrigStatus cubrig_mapping_space(const char *spec,
                                       const char *from,
                                       const char *to,
                                       int64_t top,
                                       struct CubrigSSet **out);

enum CubrigStatus cubrig_sset_from_json(const char *json, struct CubrigSSet **out);

void cubrig_sset_free(struct CubrigSSet *s);

enum CubrigStatus cubrig_sset_top_dim(const struct CubrigSSet *s, uintptr_t *out);

// Number of nondegenerate `k`-simplices.
enum CubrigStatus cubrig_sset_count(const struct CubrigSSet *s, uintptr_t k, uintptr_t *out);

enum CubrigStatus cubrig_sset_euler(const struct CubrigSSet *s, int64_t *out);

// True when the homology is that of a point through the truncation.
enum CubrigStatus cubrig_sset_is_point(const struct CubrigSSet *s, bool *out);

// Integer homology as JSON.
enum CubrigStatus cubrig_sset_homology_json(const struct CubrigSSet *s, char **out);

enum CubrigStatus cubrig_sset_to_json(const struct CubrigSSet *s, char **out);

// Runs a verification suite (or `all`). `passed` reports the verdict and
// `report`, when not null, receives the JSON report.
enum CubrigStatus cubrig_verify(const char *suite, uint64_t seed, bool *passed, char **report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CUBRIG_H */
