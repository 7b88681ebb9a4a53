#ifndef QUIVERCALC_H
#define QUIVERCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum QcStatus {
  QcStatus_Ok = 0,
  /**
   * Well-formed input on which the operation is undefined.
   */
  QcStatus_DomainError = 1,
  /**
   * Malformed or inconsistent input.
   */
  QcStatus_InputError = 2,
  QcStatus_NullArgument = 3,
  QcStatus_InvalidUtf8 = 4,
  /**
   * A bug inside the library; the handle arguments are left untouched.
   */
  QcStatus_Panic = 5,
} QcStatus;

/**
 * A validated quiver.
 */
typedef struct QcQuiver QcQuiver;

/**
 * A representation over Q or a prime field.
 */
typedef struct QcRep QcRep;

/**
 * An element of the root space of a quiver.
 */
typedef struct QcRoot QcRoot;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library.
 */
const char *qc_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void qc_string_free(char *s);

/**
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum QcStatus qc_quiver_from_json(const char *json, struct QcQuiver **out);

/**
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum QcStatus qc_quiver_to_json(const struct QcQuiver *q, char **out);

/**
 * # Safety
 * `q` must be null or a handle not yet freed.
 */
void qc_quiver_free(struct QcQuiver *q);

/**
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum QcStatus qc_quiver_is_positive_definite(const struct QcQuiver *q, bool *out);

/**
 * Positive roots seen by the window of ray depth `depth`, as a JSON array
 * of root documents.
 *
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum QcStatus qc_quiver_roots(const struct QcQuiver *q, uintptr_t depth, char **out);

/**
 * # Safety
 * `q` must be a live handle, `json` a nul-terminated string, `out` writable.
 */
enum QcStatus qc_root_from_json(const struct QcQuiver *q, const char *json, struct QcRoot **out);

/**
 * # Safety
 * `n` must be a live handle and `out` writable.
 */
enum QcStatus qc_root_to_json(const struct QcRoot *n, char **out);

/**
 * # Safety
 * `n` must be null or a handle not yet freed.
 */
void qc_root_free(struct QcRoot *n);

/**
 * Limit of the Tits form as text: an integer, `+inf`, `-inf` or `divergent`.
 *
 * # Safety
 * `n` must be a live handle and `out` writable.
 */
enum QcStatus qc_root_tits_limit(const struct QcRoot *n, char **out);

/**
 * The indecomposable with dimension vector `n` over `field` (`"Q"` or
 * `"F<p>"`).
 *
 * # Safety
 * `n` must be a live handle, `field` a nul-terminated string, `out` writable.
 */
enum QcStatus qc_indecomposable_from_root(const struct QcRoot *n,
                                          const char *field,
                                          struct QcRep **out);

/**
 * Parse a representation document. A quiver given as a path is resolved
 * against the working directory.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum QcStatus qc_rep_from_json(const char *json, struct QcRep **out);

/**
 * # Safety
 * `v` must be a live handle and `out` writable.
 */
enum QcStatus qc_rep_to_json(const struct QcRep *v, char **out);

/**
 * # Safety
 * `v` must be null or a handle not yet freed.
 */
void qc_rep_free(struct QcRep *v);

/**
 * Krull-Schmidt decomposition as JSON: `{"certificate", "summands"}`.
 *
 * # Safety
 * `v` must be a live handle and `out` writable.
 */
enum QcStatus qc_rep_decompose(const struct QcRep *v, uint64_t seed, char **out);

/**
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum QcStatus qc_rep_is_isomorphic(const struct QcRep *a, const struct QcRep *b, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUIVERCALC_H */
