#ifndef STS_CENSUS_H
#define STS_CENSUS_H

/* Generated by cbindgen from sts-census-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Smallest n with census rows.
#define STS_CENSUS_MIN_N 4

// Largest table length a context accepts (additive-convolution cap).
#define STS_CENSUS_MAX_N 10000

// Status code returned by every census call.
typedef enum StsStatus {
  // Success; out-parameters are valid.
  STS_STATUS_OK = 0,
  // A required pointer argument was null.
  STS_STATUS_NULL_POINTER = 1,
  // An argument was outside its documented domain.
  STS_STATUS_INVALID_ARGUMENT = 2,
  // A count does not fit the 64-bit result field.
  STS_STATUS_OVERFLOW = 3,
} StsStatus;

// Opaque census context: the convolution table for one table length.
typedef struct StsCensus StsCensus;

// One census row: counts by cylinder diagram A-D and the total E.
typedef struct StsCensusRow {
  uint64_t n;
  int64_t a;
  int64_t b;
  int64_t c;
  int64_t d;
  int64_t e;
} StsCensusRow;

// H(2) counts: one-cylinder F, two-cylinder G and the total H.
typedef struct StsH2Row {
  uint64_t n;
  int64_t f;
  int64_t g;
  int64_t h;
} StsH2Row;

// Asymptotic diagram densities and the zeta values behind them.
typedef struct StsLimitDensities {
  double zeta2;
  double zeta3;
  double zeta5;
  double limit_a;
  double limit_b;
  double limit_c;
  double limit_d;
} StsLimitDensities;

// Primitive class counts found by the permutation sweep at one n.
typedef struct StsBruteCounts {
  uint64_t n;
  uint64_t a;
  uint64_t b;
  uint64_t c;
  uint64_t d;
  uint64_t f;
  uint64_t g;
} StsBruteCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Allocates a census context covering `4 <= n <= n_max` and stores it in
// `*out`. Free with `sts_census_free`.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum StsStatus sts_census_new(uint64_t n_max, struct StsCensus **out);

// Releases a context returned by `sts_census_new`. Passing null is a no-op.
//
// # Safety
// `handle` must be null or a pointer obtained from `sts_census_new`, not
// yet freed.
void sts_census_free(struct StsCensus *handle);

// Writes the census row at `n` (counts A-D and total E) into `*out`.
//
// # Safety
// `handle` must come from `sts_census_new` and `out` must point to a row.
enum StsStatus sts_census_row(const struct StsCensus *handle, uint64_t n, struct StsCensusRow *out);

// Writes the H(2) counts (F, G, H) at `n >= 3` into `*out`. Stateless.
//
// # Safety
// `out` must point to a row.
enum StsStatus sts_h2_counts(uint64_t n, struct StsH2Row *out);

// Writes the asymptotic density constants into `*out`.
//
// # Safety
// `out` must point to a densities struct.
enum StsStatus sts_limit_densities(struct StsLimitDensities *out);

// Runs the full permutation-pair sweep at `n` (4..=8; `n = 8` costs about
// 1.6e9 pairs and must be enabled with `allow_n8`) and writes the primitive
// class counts into `*out`.
//
// # Safety
// `out` must point to a counts struct.
enum StsStatus sts_brute_force(uint64_t n, bool allow_n8, struct StsBruteCounts *out);

// Crate version as a static NUL-terminated string.
const char *sts_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STS_CENSUS_H */
