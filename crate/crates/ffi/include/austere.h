#ifndef AUSTERE_H
#define AUSTERE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes.
 */
typedef enum AustereStatus {
  AUSTERE_STATUS_OK = 0,
  /**
   * Malformed or inadmissible input.
   */
  AUSTERE_STATUS_INPUT_ERROR = 1,
  /**
   * An internal consistency check failed.
   */
  AUSTERE_STATUS_STRUCTURAL_ERROR = 2,
  /**
   * Shipped data is inconsistent.
   */
  AUSTERE_STATUS_DATA_ERROR = 3,
  AUSTERE_STATUS_NULL_POINTER = 4,
  AUSTERE_STATUS_INVALID_UTF8 = 5,
  /**
   * Index out of range or buffer too small.
   */
  AUSTERE_STATUS_OUT_OF_RANGE = 6,
  AUSTERE_STATUS_PANIC = 7,
} AustereStatus;

/**
 * A Satake diagram with its lattice involution.
 */
typedef struct AustereDiagram AustereDiagram;

/**
 * A list of roots, each of the same length.
 */
typedef struct AustereRootList AustereRootList;

/**
 * A root system such as `E6` or `A1+B2`.
 */
typedef struct AustereRootSystem AustereRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid
 * until the next call into the library on the same thread.
 */
const char *austere_last_error(void);

/**
 * Library version, statically allocated.
 */
const char *austere_version(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void austere_string_free(char *s);

/**
 * Builds the root system named by `descriptor`, e.g. `"B3"` or `"A1+G2"`.
 *
 * # Safety
 * `descriptor` must be a nul-terminated string; `out` must be writable.
 */
enum AustereStatus austere_root_system_new(const char *descriptor, struct AustereRootSystem **out);

/**
 * # Safety
 * `rs` must come from [`austere_root_system_new`] or be null.
 */
void austere_root_system_free(struct AustereRootSystem *rs);

/**
 * Rank of the system, 0 for null.
 *
 * # Safety
 * `rs` must be a live handle or null.
 */
uintptr_t austere_root_system_rank(const struct AustereRootSystem *rs);

/**
 * Number of roots, 0 for null.
 *
 * # Safety
 * `rs` must be a live handle or null.
 */
uintptr_t austere_root_system_root_count(const struct AustereRootSystem *rs);

/**
 * Standard Satake diagram of type `label` (e.g. `"EIII"`, `"B+B"`) at rank
 * `r` and split rank `l`, with its involution already validated.
 *
 * # Safety
 * `label` must be a nul-terminated string; `out` must be writable.
 */
enum AustereStatus austere_diagram_new(const char *label,
                                       uintptr_t r,
                                       uintptr_t l,
                                       struct AustereDiagram **out);

/**
 * # Safety
 * `d` must come from [`austere_diagram_new`] or be null.
 */
void austere_diagram_free(struct AustereDiagram *d);

/**
 * The diagram as JSON; release with [`austere_string_free`].
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum AustereStatus austere_diagram_json(const struct AustereDiagram *d, char **out);

/**
 * Roots fixed by the diagram involution (the real roots).
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum AustereStatus austere_real_roots(const struct AustereDiagram *d, struct AustereRootList **out);

/**
 * Roots negated by the diagram involution (the imaginary roots).
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum AustereStatus austere_imaginary_roots(const struct AustereDiagram *d,
                                           struct AustereRootList **out);

/**
 * # Safety
 * `list` must be a live handle or null.
 */
uintptr_t austere_root_list_len(const struct AustereRootList *list);

/**
 * Coefficients per root, 0 for null.
 *
 * # Safety
 * `list` must be a live handle or null.
 */
uintptr_t austere_root_list_rank(const struct AustereRootList *list);

/**
 * Copies root `index` into `buf`, which holds `buf_len` integers.
 *
 * # Safety
 * `list` must be a live handle; `buf` must hold `buf_len` integers.
 */
enum AustereStatus austere_root_list_get(const struct AustereRootList *list,
                                         uintptr_t index,
                                         int64_t *buf,
                                         uintptr_t buf_len);

/**
 * # Safety
 * `list` must come from this library or be null.
 */
void austere_root_list_free(struct AustereRootList *list);

/**
 * Austere test at `X = num[i]/den[i]` in simple-root coordinates, with
 * unit multiplicities. `den` may be null for integer coordinates.
 *
 * # Safety
 * `rs` must be a live handle; `num` (and `den` unless null) must hold
 * `len` integers; `out` must be writable.
 */
enum AustereStatus austere_is_austere(const struct AustereRootSystem *rs,
                                      const int64_t *num,
                                      const int64_t *den,
                                      uintptr_t len,
                                      bool *out);

/**
 * Evaluates a catalog formula such as `"min(i+j, m+n-(i+j))"` under
 * bindings like `"n=5,m=3,i=1,j=2"`. Conditions give 1 or 0 and set
 * `is_bool`.
 *
 * # Safety
 * `src` and `params` must be nul-terminated (`params` may be null);
 * `out` and `is_bool` must be writable.
 */
enum AustereStatus austere_formula_eval(const char *src,
                                        const char *params,
                                        int64_t *out,
                                        bool *is_bool);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AUSTERE_H */
