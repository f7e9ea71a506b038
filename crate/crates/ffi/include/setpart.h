#ifndef SETPART_H
#define SETPART_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SP_INIT_ROUND_ROBIN 0

#define SP_INIT_FIRST_HALF 1

#define SP_INIT_RANDOM 2

#define SP_TIE_NO_FLIP 0

#define SP_TIE_SMALLEST 1

#define SP_ENGINE_SCAN 0

#define SP_ENGINE_REFERENCE 1

typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_ARGUMENT = 1,
  SP_STATUS_INVALID_UTF8 = 2,
  SP_STATUS_PARSE_ERROR = 3,
  SP_STATUS_INVALID_ARGUMENT = 4,
  SP_STATUS_TOO_LARGE = 5,
  SP_STATUS_BUFFER_TOO_SMALL = 6,
  SP_STATUS_PANIC = 7,
} SpStatus;

/**
 * Opaque instance handle.
 */
typedef struct SpInstance SpInstance;

/**
 * Opaque result handle shared by the solver, the baselines and the oracle.
 */
typedef struct SpReport SpReport;

/**
 * Solver options. Fill with [`sp_config_default`] and adjust.
 */
typedef struct SpConfig {
  /**
   * One of the `SP_INIT_*` constants.
   */
  uint32_t init;
  /**
   * Seed for `SP_INIT_RANDOM`.
   */
  uint64_t seed;
  /**
   * One of the `SP_TIE_*` constants.
   */
  uint32_t tie;
  /**
   * One of the `SP_ENGINE_*` constants.
   */
  uint32_t engine;
  bool trace;
} SpConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Writes the default configuration to `out`.
 *
 * # Safety
 * `out` must be null or point to writable memory for one `SpConfig`.
 */
enum SpStatus sp_config_default(struct SpConfig *out);

/**
 * Parses an instance in the one-value-per-line text format.
 *
 * # Safety
 * `text` must be null or a NUL-terminated string; `out` must be null or
 * writable.
 */
enum SpStatus sp_instance_parse(const char *text, struct SpInstance **out);

/**
 * Builds an instance from integer mantissas; the real values are
 * `values[i] / 10^scale_exp`.
 *
 * # Safety
 * `values` must point to `len` readable integers (or be null when `len` is
 * 0); `out` must be writable.
 */
enum SpStatus sp_instance_from_i64(const int64_t *values,
                                   size_t len,
                                   uint32_t scale_exp,
                                   struct SpInstance **out);

/**
 * Number of values in the instance, 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t sp_instance_len(const struct SpInstance *inst);

/**
 * # Safety
 * `inst` must be null or a handle from this library that is not used again.
 */
void sp_instance_free(struct SpInstance *inst);

/**
 * Runs the local search. A null `config` means the defaults.
 *
 * # Safety
 * `inst` must be a live handle, `config` null or readable, `out` writable.
 */
enum SpStatus sp_solve(const struct SpInstance *inst,
                       const struct SpConfig *config,
                       struct SpReport **out);

/**
 * Greedy baseline.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum SpStatus sp_greedy(const struct SpInstance *inst, struct SpReport **out);

/**
 * Karmarkar-Karp differencing baseline.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum SpStatus sp_karmarkar_karp(const struct SpInstance *inst, struct SpReport **out);

/**
 * Exact optimum; exhaustive up to 24 values, meet in the middle up to 40.
 * Larger instances return `TooLarge`.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum SpStatus sp_oracle(const struct SpInstance *inst, struct SpReport **out);

/**
 * Decides local 2-optimality of the partition whose side 1 is `side1`
 * (zero-based, the rest is side 2). Writes the verdict to `out_optimal`.
 *
 * # Safety
 * `inst` must be a live handle, `side1` readable for `len` entries (or null
 * when `len` is 0) and `out_optimal` writable.
 */
enum SpStatus sp_check(const struct SpInstance *inst,
                       const size_t *side1,
                       size_t len,
                       bool *out_optimal);

/**
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t sp_report_traverses(const struct SpReport *report);

/**
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t sp_report_swaps(const struct SpReport *report);

/**
 * `|S1 - S2|` as a decimal string in the instance's scale. Free with
 * [`sp_string_free`]. Null for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *sp_report_final_diff(const struct SpReport *report);

/**
 * Copies the indices of `side` (1 or 2) into `buf`. `out_len` always receives
 * the full count; `BufferTooSmall` is returned when `cap` is less than that.
 *
 * # Safety
 * `report` must be a live handle, `buf` writable for `cap` entries (or null
 * when `cap` is 0) and `out_len` writable.
 */
enum SpStatus sp_report_side(const struct SpReport *report,
                             uint32_t side,
                             size_t *buf,
                             size_t cap,
                             size_t *out_len);

/**
 * The JSON report document (one-based indices). Free with [`sp_string_free`].
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *sp_report_to_json(const struct SpReport *report);

/**
 * # Safety
 * `report` must be null or a handle from this library that is not used again.
 */
void sp_report_free(struct SpReport *report);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sp_string_free(char *s);

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *sp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SETPART_H */
