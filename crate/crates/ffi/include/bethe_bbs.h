#ifndef BETHE_BBS_H
#define BETHE_BBS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BbsStatus {
  BBS_STATUS_OK = 0,
  BBS_STATUS_NULL_POINTER = 1,
  BBS_STATUS_INVALID_UTF8 = 2,
  BBS_STATUS_PARSE = 3,
  BBS_STATUS_INVALID_INPUT = 4,
  BBS_STATUS_INVALID_RC = 5,
  BBS_STATUS_NOT_HIGHEST = 6,
  BBS_STATUS_BOUNDARY_CHECK = 7,
  BBS_STATUS_NOT_SUB_MULTISET = 8,
  BBS_STATUS_INDEX_OUT_OF_RANGE = 9,
  /**
   * An identity check found a counterexample.
   */
  BBS_STATUS_CHECK_FAILED = 10,
  BBS_STATUS_PANIC = 11,
} BbsStatus;

/**
 * A tensor product of single-row crystal elements.
 */
typedef struct BbsPath BbsPath;

/**
 * A rigged configuration.
 */
typedef struct BbsRiggedConfig BbsRiggedConfig;

/**
 * A table indexed by prefix length k and color d (τ, ρ or ℰ).
 */
typedef struct BbsTable BbsTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the next failing call.
 */
const char *bbs_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void bbs_string_free(char *s);

/**
 * Parses a path of rank `n`; boxes are separated by spaces, or one letter per box without spaces.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum BbsStatus bbs_path_parse(size_t n, const char *text, struct BbsPath **out);

/**
 * # Safety
 * `p` must come from this library or be NULL.
 */
void bbs_path_free(struct BbsPath *p);

/**
 * # Safety
 * `p` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_path_render(const struct BbsPath *p, char **out);

/**
 * Number of tensor factors, 0 for NULL.
 *
 * # Safety
 * `p` must be a live handle or NULL.
 */
size_t bbs_path_len(const struct BbsPath *p);

/**
 * T_l with the boundary check; `l == 0` means ∞.
 *
 * # Safety
 * `p` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_evolve(const struct BbsPath *p, uint32_t l, struct BbsPath **out);

/**
 * Row energy E_l; `l == 0` means ∞.
 *
 * # Safety
 * `p` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_row_energy(const struct BbsPath *p, uint32_t l, int64_t *out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum BbsStatus bbs_rc_from_json(const char *json, struct BbsRiggedConfig **out);

/**
 * # Safety
 * `rc` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_rc_to_json(const struct BbsRiggedConfig *rc, char **out);

/**
 * # Safety
 * `rc` must come from this library or be NULL.
 */
void bbs_rc_free(struct BbsRiggedConfig *rc);

/**
 * # Safety
 * `rc` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_kkr_to_path(const struct BbsRiggedConfig *rc, struct BbsPath **out);

/**
 * Restricted RC of a highest path, or the unrestricted RC of any path when `unrestricted` is set.
 *
 * # Safety
 * `p` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_kkr_from_path(const struct BbsPath *p,
                                 bool unrestricted,
                                 struct BbsRiggedConfig **out);

/**
 * # Safety
 * `rc` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_tau_table(const struct BbsRiggedConfig *rc, struct BbsTable **out);

/**
 * # Safety
 * `p` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_rho_table(const struct BbsPath *p, struct BbsTable **out);

/**
 * Corner energies ℰ, or ℰ∨ when `check` is set.
 *
 * # Safety
 * `p` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_energy_table(const struct BbsPath *p, bool check, struct BbsTable **out);

/**
 * Largest k; valid entries are 0 <= k <= len, 0 <= d <= rank + 1.
 *
 * # Safety
 * `t` must be a live handle or NULL.
 */
size_t bbs_table_len(const struct BbsTable *t);

/**
 * # Safety
 * `t` must be a live handle or NULL.
 */
size_t bbs_table_rank(const struct BbsTable *t);

/**
 * # Safety
 * `t` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_table_get(const struct BbsTable *t, size_t k, size_t d, int64_t *out);

/**
 * # Safety
 * `t` must be a live handle, `out` writable.
 */
enum BbsStatus bbs_table_to_csv(const struct BbsTable *t, char **out);

/**
 * # Safety
 * `t` must come from this library or be NULL.
 */
void bbs_table_free(struct BbsTable *t);

/**
 * Checks τ = ρ = ℰ on every prefix; `CheckFailed` leaves the counterexample in `bbs_last_error`.
 *
 * # Safety
 * `p` must be a live handle.
 */
enum BbsStatus bbs_verify_triple(const struct BbsPath *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BETHE_BBS_H */
