#ifndef PARACERT_H
#define PARACERT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum PcStatus {
  PC_OK = 0,
  PC_NULL_POINTER = 1,
  PC_INVALID_ARGUMENT = 2,
  PC_UNSUPPORTED = 3,
  PC_DOMAIN_ERROR = 4,
  PC_SERIALIZATION_ERROR = 5,
  PC_PANIC = 6,
} PcStatus;

/*
 Outcome of a separation run.
 */
typedef enum PcVerdictStatus {
  PC_CERTIFIED = 0,
  PC_INCONCLUSIVE = 1,
} PcVerdictStatus;

/*
 Opaque result of [`pc_verify`].
 */
typedef struct PcVerdict PcVerdict;

/*
 A closed interval `[lo, hi]` that encloses an exact real value.
 */
typedef struct PcInterval {
  double lo;
  double hi;
} PcInterval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *pc_version(void);

/*
 Message for the last failed call on this thread; empty if none. The
 pointer stays valid until the next failing call on the same thread.
 */
const char *pc_last_error_message(void);

/*
 Certifies J(0) ≠ J(π/2) on `[-t_max, t_max] x [0, r_max]` with grid
 spacing `step`. The verdict is written to `*out` even when inconclusive.

 # Safety
 `out` must be null or valid for writing one pointer.
 */
enum PcStatus pc_verify(uint32_t dim,
                        double t_max,
                        double r_max,
                        double step,
                        struct PcVerdict **out);

/*
 # Safety
 `v` must be null or a live verdict; `out` null or writable.
 */
enum PcStatus pc_verdict_status(const struct PcVerdict *v, enum PcVerdictStatus *out);

/*
 Enclosure of J(0) over the box.

 # Safety
 As for [`pc_verdict_status`].
 */
enum PcStatus pc_verdict_j0(const struct PcVerdict *v, struct PcInterval *out);

/*
 Enclosure of J(π/2) over the box.

 # Safety
 As for [`pc_verdict_status`].
 */
enum PcStatus pc_verdict_jhalfpi(const struct PcVerdict *v, struct PcInterval *out);

/*
 Certified bound over the complement of the box.

 # Safety
 As for [`pc_verdict_status`].
 */
enum PcStatus pc_verdict_tail(const struct PcVerdict *v, double *out);

/*
 Gap between the widened enclosures; positive iff certified.

 # Safety
 As for [`pc_verdict_status`].
 */
enum PcStatus pc_verdict_margin(const struct PcVerdict *v, double *out);

/*
 The verdict as JSON. Release the string with [`pc_string_free`].

 # Safety
 As for [`pc_verdict_status`].
 */
enum PcStatus pc_verdict_to_json(const struct PcVerdict *v, char **out);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void pc_string_free(char *s);

/*
 Releases a verdict. Null is ignored.

 # Safety
 `v` must be null or a verdict from [`pc_verify`] not yet freed.
 */
void pc_verdict_free(struct PcVerdict *v);

/*
 κ_q for the Stein-Tomas exponent in dimension `dim` (1 or 2).

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_kappa(uint32_t dim, struct PcInterval *out);

/*
 κ_q^{1/q} · 2^{1/p'} in dimension `dim` (1 or 2).

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_lower_bound_factor(uint32_t dim, struct PcInterval *out);

/*
 Certified tail bound of the J integrand outside `[-t_max, t_max] x [0, r_max]`.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_tail_bound(uint32_t dim, double t_max, double r_max, double *out);

/*
 Validates `[lo, hi]`.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_new(double lo, double hi, struct PcInterval *out);

/*
 Outward-rounded sum.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_add(struct PcInterval a, struct PcInterval b, struct PcInterval *out);

/*
 Outward-rounded difference.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_sub(struct PcInterval a, struct PcInterval b, struct PcInterval *out);

/*
 Outward-rounded product.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_mul(struct PcInterval a, struct PcInterval b, struct PcInterval *out);

/*
 Outward-rounded quotient; fails if `b` contains 0.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_div(struct PcInterval a, struct PcInterval b, struct PcInterval *out);

/*
 Enclosure of exp.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_exp(struct PcInterval a, struct PcInterval *out);

/*
 Enclosure of ln; fails unless `a` is positive.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_ln(struct PcInterval a, struct PcInterval *out);

/*
 Enclosure of sqrt; fails if `a` has a negative part.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_sqrt(struct PcInterval a, struct PcInterval *out);

/*
 Enclosure of cos.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_cos(struct PcInterval a, struct PcInterval *out);

/*
 Enclosure of sin.

 # Safety
 `out` must be null or writable.
 */
enum PcStatus pc_interval_sin(struct PcInterval a, struct PcInterval *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARACERT_H */
