#ifndef EXTWEYL_H
#define EXTWEYL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum ExtweylFormat {
  EXTWEYL_FORMAT_JSON = 0,
  EXTWEYL_FORMAT_DOT = 1,
} ExtweylFormat;

/*
 Result codes shared by all entry points.
 */
typedef enum ExtweylStatus {
  EXTWEYL_STATUS_OK = 0,
  EXTWEYL_STATUS_NULL_POINTER = 1,
  EXTWEYL_STATUS_INVALID_ARGUMENT = 2,
  EXTWEYL_STATUS_UNSUPPORTED_TUBULAR = 3,
  EXTWEYL_STATUS_EXHAUSTED = 4,
  EXTWEYL_STATUS_BUFFER_TOO_SMALL = 5,
  EXTWEYL_STATUS_OVERFLOW = 6,
  EXTWEYL_STATUS_INTERNAL = 7,
  EXTWEYL_STATUS_PANIC = 8,
} ExtweylStatus;

typedef enum ExtweylType {
  EXTWEYL_TYPE_DOMESTIC = 0,
  EXTWEYL_TYPE_TUBULAR = 1,
  EXTWEYL_TYPE_WILD = 2,
} ExtweylType;

/*
 An extended Coxeter–Dynkin diagram and, unless tubular, its group.
 */
typedef struct ExtweylDiagram ExtweylDiagram;

/*
 A tuple of reflections.
 */
typedef struct ExtweylFactorization ExtweylFactorization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call on the same thread.
 */
const char *extweyl_last_error_message(void);

/*
 Creates a diagram from `len` arm lengths (each at least 1). Tubular
 diagrams are accepted; group operations on them fail with
 `UNSUPPORTED_TUBULAR`.

 # Safety
 `arms` must point to `len` readable values (or be null when `len` is 0);
 `out` must be writable.
 */
enum ExtweylStatus extweyl_diagram_new(const int64_t *arms,
                                       size_t len,
                                       struct ExtweylDiagram **out);

/*
 # Safety
 `d` must be null or a handle from [`extweyl_diagram_new`] not yet freed.
 */
void extweyl_diagram_free(struct ExtweylDiagram *d);

/*
 Number of simple roots `n = 2 + Σ p_i`.

 # Safety
 `d` must be a live diagram handle; `out` must be writable.
 */
enum ExtweylStatus extweyl_diagram_rank(const struct ExtweylDiagram *d, size_t *out);

/*
 Type and signature (positive, negative, zero eigenvalue counts).

 # Safety
 `d` must be a live diagram handle; all output pointers must be writable.
 */
enum ExtweylStatus extweyl_diagram_classify(const struct ExtweylDiagram *d,
                                            enum ExtweylType *out_type,
                                            size_t *out_plus,
                                            size_t *out_minus,
                                            size_t *out_zero);

/*
 Copies the `n × n` Gram matrix, row-major, into `buf`. Fails with
 `BUFFER_TOO_SMALL` when `buf_len < n * n`.

 # Safety
 `d` must be a live diagram handle; `buf` must point to `buf_len`
 writable values.
 */
enum ExtweylStatus extweyl_diagram_gram(const struct ExtweylDiagram *d,
                                        int64_t *buf,
                                        size_t buf_len);

/*
 Projected roots of height at most `height` as JSON
 `{"height_bound", "complete", "roots"}`.

 # Safety
 `d` must be a live diagram handle; `out` must be writable.
 */
enum ExtweylStatus extweyl_roots_json(const struct ExtweylDiagram *d, int64_t height, char **out);

/*
 The standard factorization of the Coxeter transformation for the
 default arm ordering.

 # Safety
 `d` must be a live diagram handle; `out` must be writable.
 */
enum ExtweylStatus extweyl_standard_factorization(const struct ExtweylDiagram *d,
                                                  struct ExtweylFactorization **out);

/*
 Parses `{"tuple": [{"root": [...], "k": k}, ...]}` and validates every
 entry against the diagram.

 # Safety
 `d` must be a live diagram handle; `json` a NUL-terminated string; `out`
 writable.
 */
enum ExtweylStatus extweyl_factorization_from_json(const struct ExtweylDiagram *d,
                                                   const char *json,
                                                   struct ExtweylFactorization **out);

/*
 # Safety
 `f` must be a live factorization handle; `out` must be writable.
 */
enum ExtweylStatus extweyl_factorization_to_json(const struct ExtweylFactorization *f, char **out);

/*
 # Safety
 `f` must be a live factorization handle; `out` must be writable.
 */
enum ExtweylStatus extweyl_factorization_len(const struct ExtweylFactorization *f, size_t *out);

/*
 Applies the braid word `letters` (`±i` for `σ_i^{±1}`, left to right) and
 returns a new handle.

 # Safety
 `d` and `f` must be live handles; `letters` must point to `len` readable
 values (or be null when `len` is 0); `out` must be writable.
 */
enum ExtweylStatus extweyl_factorization_apply_braid(const struct ExtweylDiagram *d,
                                                     const struct ExtweylFactorization *f,
                                                     const int32_t *letters,
                                                     size_t len,
                                                     struct ExtweylFactorization **out);

/*
 Deterministic random walk of `steps` moves seeded by `seed`.

 # Safety
 `d` and `f` must be live handles; `out` must be writable.
 */
enum ExtweylStatus extweyl_factorization_random_walk(const struct ExtweylDiagram *d,
                                                     const struct ExtweylFactorization *f,
                                                     size_t steps,
                                                     uint64_t seed,
                                                     struct ExtweylFactorization **out);

/*
 # Safety
 `f` must be null or a live factorization handle.
 */
void extweyl_factorization_free(struct ExtweylFactorization *f);

/*
 Searches for a braid word carrying `from` to `to` within `budget`
 expanded nodes. Writes `{"status":"connected","letters":[...],"nodes":N}`
 and returns `OK`, or writes `{"status":"exhausted","nodes":N}` and
 returns `EXHAUSTED`.

 # Safety
 All handles must be live; `out` must be writable.
 */
enum ExtweylStatus extweyl_connect(const struct ExtweylDiagram *d,
                                   const struct ExtweylFactorization *from,
                                   const struct ExtweylFactorization *to,
                                   size_t budget,
                                   char **out);

/*
 Budgeted slice of the interval below the Coxeter transformation of the
 default ordering, exported as JSON or DOT. A slice truncated at
 `node_cap` is still written, and the call returns `EXHAUSTED`.

 # Safety
 `d` must be a live diagram handle; `out` must be writable.
 */
enum ExtweylStatus extweyl_interval(const struct ExtweylDiagram *d,
                                    size_t move_budget,
                                    int64_t k_bound,
                                    size_t node_cap,
                                    enum ExtweylFormat format,
                                    char **out);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void extweyl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXTWEYL_H */
