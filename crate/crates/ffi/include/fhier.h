#ifndef FHIER_H
#define FHIER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum FhierStatus {
  FHIER_STATUS_OK = 0,
  FHIER_STATUS_NULL_POINTER = 1,
  FHIER_STATUS_INVALID_UTF8 = 2,
  FHIER_STATUS_PARSE = 3,
  FHIER_STATUS_INVALID = 4,
  FHIER_STATUS_RESOURCE_LIMIT = 5,
  FHIER_STATUS_UNSUPPORTED = 6,
  FHIER_STATUS_PANIC = 7,
} FhierStatus;

// A Muller acceptor.
typedef struct FhierAcceptor FhierAcceptor;

// A labeled forest.
typedef struct FhierForest FhierForest;

// An ordinal below epsilon_0.
typedef struct FhierOrdinal FhierOrdinal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Owned by the
// library and valid until the next call.
const char *fhier_last_error(void);

// Frees a string returned by the library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void fhier_string_free(char *s);

// Parses a forest in the text grammar.
//
// # Safety
// `src` is a NUL-terminated string; `out` is writable.
enum FhierStatus fhier_forest_parse(const char *src, struct FhierForest **out);

// # Safety
// `f` comes from this library and is not used afterwards. NULL is ignored.
void fhier_forest_free(struct FhierForest *f);

// Text form of a forest.
//
// # Safety
// `f` is a live handle; `out` is writable.
enum FhierStatus fhier_forest_to_string(const struct FhierForest *f, char **out);

// `*out = a ≤_h b`.
//
// # Safety
// Handles are live; `out` is writable.
enum FhierStatus fhier_forest_leq_h(const struct FhierForest *a,
                                    const struct FhierForest *b,
                                    bool *out);

// Canonical representative of the class of `f`, as a new handle.
//
// # Safety
// `f` is live; `out` is writable.
enum FhierStatus fhier_forest_canonical(const struct FhierForest *f, struct FhierForest **out);

// Parses an acceptor file.
//
// # Safety
// `src` is a NUL-terminated string; `out` is writable.
enum FhierStatus fhier_acceptor_parse(const char *src, struct FhierAcceptor **out);

// # Safety
// `a` comes from this library and is not used afterwards. NULL is ignored.
void fhier_acceptor_free(struct FhierAcceptor *a);

// Acceptor in the file format.
//
// # Safety
// `a` is live; `out` is writable.
enum FhierStatus fhier_acceptor_to_string(const struct FhierAcceptor *a, char **out);

// Canonical acceptor over `k` colors for an invariant (a level-1 forest,
// or a level-0 forest which is lifted first).
//
// # Safety
// `t` is live; `out` is writable.
enum FhierStatus fhier_acceptor_build(const struct FhierForest *t,
                                      size_t k,
                                      struct FhierAcceptor **out);

// Color of `u·v^ω`, with the word written `u,v`.
//
// # Safety
// `a` is live; `word` is a NUL-terminated string; `out` is writable.
enum FhierStatus fhier_acceptor_eval(const struct FhierAcceptor *a,
                                     const char *word,
                                     uint32_t *out);

// `*out = a ≤_CA b`, decided by the reduction game.
//
// # Safety
// Handles are live; `out` is writable.
enum FhierStatus fhier_acceptor_leq(const struct FhierAcceptor *a,
                                    const struct FhierAcceptor *b,
                                    bool *out);

// Degree invariant of `a` as a new forest handle.
//
// # Safety
// `a` is live; `out` is writable.
enum FhierStatus fhier_acceptor_degree(const struct FhierAcceptor *a, struct FhierForest **out);

// Parses an ordinal such as `w^{1}*2 + 3`.
//
// # Safety
// `src` is a NUL-terminated string; `out` is writable.
enum FhierStatus fhier_ordinal_parse(const char *src, struct FhierOrdinal **out);

// # Safety
// `o` comes from this library and is not used afterwards. NULL is ignored.
void fhier_ordinal_free(struct FhierOrdinal *o);

// # Safety
// `o` is live; `out` is writable.
enum FhierStatus fhier_ordinal_to_string(const struct FhierOrdinal *o, char **out);

// `*out` is -1, 0 or 1 as `a` is below, equal to or above `b`.
//
// # Safety
// Handles are live; `out` is writable.
enum FhierStatus fhier_ordinal_cmp(const struct FhierOrdinal *a,
                                   const struct FhierOrdinal *b,
                                   int32_t *out);

// `*out = a + b` as a new handle.
//
// # Safety
// Handles are live; `out` is writable.
enum FhierStatus fhier_ordinal_add(const struct FhierOrdinal *a,
                                   const struct FhierOrdinal *b,
                                   struct FhierOrdinal **out);

// `*out = a · b` as a new handle.
//
// # Safety
// Handles are live; `out` is writable.
enum FhierStatus fhier_ordinal_mul(const struct FhierOrdinal *a,
                                   const struct FhierOrdinal *b,
                                   struct FhierOrdinal **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FHIER_H */
