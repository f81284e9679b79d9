#ifndef REGCLASS_H
#define REGCLASS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Library errors keep the numbering of the core error type.
 */
typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_INVALID = 1,
  RC_STATUS_UNSUPPORTED = 2,
  RC_STATUS_CAP_EXCEEDED = 3,
  RC_STATUS_NOT_NORMAL = 4,
  RC_STATUS_NOT_NORMALIZING = 5,
  RC_STATUS_CONSISTENCY = 6,
  RC_STATUS_CACHE = 7,
  RC_STATUS_IO = 8,
  RC_STATUS_NULL_POINTER = 100,
  RC_STATUS_BAD_STRING = 101,
  RC_STATUS_OUT_OF_RANGE = 102,
  RC_STATUS_PANIC = 103,
} RcStatus;

/**
 * The outcome of certifying a bundled claim over its grid.
 */
typedef struct RcGrid RcGrid;

/**
 * A catalog group with its class table.
 */
typedef struct RcGroup RcGroup;

/**
 * Class counts of a group at a prime.
 */
typedef struct RcClassCounts {
  uint64_t p;
  uint64_t k;
  uint64_t k_p;
  uint64_t k_p_prime;
} RcClassCounts;

/**
 * Counts of p-rational and p'-rational irreducible characters.
 */
typedef struct RcCharacterCounts {
  uint64_t p;
  uint64_t p_rational;
  uint64_t p_prime_rational;
  uint64_t union_count;
  uint64_t rational;
  /**
   * -1, 0 or 1 as the union count is below, equal to or above 2√(p−1); 2 if undecided.
   */
  int32_t union_vs_threshold;
} RcCharacterCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *rc_version(void);

/**
 * Copies the last error message of this thread into `buf`, NUL-terminated and truncated
 * to `len` bytes. Returns the full message length, or 0 when there is none.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t rc_last_error_message(char *buf, size_t len);

/**
 * Builds a catalog entry such as `psl2(16)` and computes its classes.
 *
 * # Safety
 * `entry` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RcStatus rc_group_open(const char *entry, struct RcGroup **out_group);

/**
 * # Safety
 * `group` must be null or a handle from [`rc_group_open`] not yet freed.
 */
void rc_group_free(struct RcGroup *group);

/**
 * # Safety
 * `group` must be a live handle and `order` a valid pointer.
 */
enum RcStatus rc_group_order(const struct RcGroup *group, uint64_t *order);

/**
 * # Safety
 * `group` must be a live handle and `count` a valid pointer.
 */
enum RcStatus rc_group_class_count(const struct RcGroup *group, uint64_t *count);

/**
 * Size and element order of class `index`.
 *
 * # Safety
 * `group` must be a live handle; `size` and `order` valid pointers.
 */
enum RcStatus rc_group_class(const struct RcGroup *group,
                             uint64_t index,
                             uint64_t *size,
                             uint64_t *order);

/**
 * # Safety
 * `group` must be a live handle and `counts` a valid pointer.
 */
enum RcStatus rc_group_class_counts(const struct RcGroup *group,
                                    uint64_t p,
                                    struct RcClassCounts *counts);

/**
 * Character counts at `p`; the character table is computed on first use.
 *
 * # Safety
 * `group` must be a live handle and `counts` a valid pointer.
 */
enum RcStatus rc_group_character_counts(const struct RcGroup *group,
                                        uint64_t p,
                                        struct RcCharacterCounts *counts);

/**
 * Writes the catalog identifier of the group into `buf` like [`rc_last_error_message`].
 *
 * # Safety
 * `group` must be a live handle; `buf` null or `len` writable bytes; `needed` valid.
 */
enum RcStatus rc_group_id(const struct RcGroup *group, char *buf, size_t len, size_t *needed);

/**
 * Certifies a bundled claim such as `g2-ssc-torus` over its default grid.
 *
 * # Safety
 * `claim` must be a NUL-terminated string and `out_grid` a valid pointer.
 */
enum RcStatus rc_grid_certify(const char *claim, struct RcGrid **out_grid);

/**
 * # Safety
 * `grid` must be null or a handle from [`rc_grid_certify`] not yet freed.
 */
void rc_grid_free(struct RcGrid *grid);

/**
 * Whether the certified exceptions equal the expected ones, and how many there are.
 *
 * # Safety
 * `grid` must be a live handle; `matches` and `exceptions` valid pointers.
 */
enum RcStatus rc_grid_summary(const struct RcGrid *grid,
                              bool *matches,
                              uint64_t *exceptions,
                              uint64_t *undecided);

/**
 * The `index`-th grid point where the inequality fails.
 *
 * # Safety
 * `grid` must be a live handle and `q` a valid pointer.
 */
enum RcStatus rc_grid_exception(const struct RcGrid *grid, uint64_t index, uint64_t *q);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REGCLASS_H */
