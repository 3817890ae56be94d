//! Directed rounding for binary64 without touching the FPU rounding mode.
//!
//! `+ - * / sqrt` are evaluated in round-to-nearest. The exact residual of
//! each operation (TwoSum, or an FMA for products, quotients and roots) has
//! a sign that says on which side of the rounded value the exact result
//! lies, which gives correctly directed results. Close to the subnormal
//! range the residual is no longer exact; there the result is pushed one
//! ulp outward instead, which is always valid.

/// Below this magnitude FMA residuals may be inexact.
const RESIDUAL_SAFE: f64 = 1.0e-289;

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
fn overflowed(a: f64, b: f64, r: f64) -> bool {
    r.is_infinite() && a.is_finite() && b.is_finite()
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        return if overflowed(a, b, s) && s > 0.0 { f64::MAX } else { s };
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        return if overflowed(a, b, s) && s < 0.0 { f64::MIN } else { s };
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// `0 * inf` is taken to be 0, the usual endpoint convention.
#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return if overflowed(a, b, p) && p > 0.0 { f64::MAX } else { p };
    }
    if p.abs() < RESIDUAL_SAFE {
        return p.next_down();
    }
    if a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return if overflowed(a, b, p) && p < 0.0 { f64::MIN } else { p };
    }
    if p.abs() < RESIDUAL_SAFE {
        return p.next_up();
    }
    if a.mul_add(b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Quotient rounded toward `-inf`. `b` must be nonzero; `inf / inf` is not
/// handled here.
#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    if a == 0.0 || b.is_infinite() {
        return if a.is_infinite() {
            f64::NAN
        } else {
            0.0 * a.signum() * b.signum()
        };
    }
    let q = a / b;
    if q.is_infinite() {
        return if a.is_finite() && q > 0.0 { f64::MAX } else { q };
    }
    if q.abs() < RESIDUAL_SAFE || a.abs() < RESIDUAL_SAFE {
        return q.next_down();
    }
    let r = (-q).mul_add(b, a);
    if r == 0.0 {
        q
    } else if (r < 0.0) != (b < 0.0) {
        // r / b < 0: the exact quotient lies below q.
        q.next_down()
    } else {
        q
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    if a == 0.0 || b.is_infinite() {
        return if a.is_infinite() {
            f64::NAN
        } else {
            0.0 * a.signum() * b.signum()
        };
    }
    let q = a / b;
    if q.is_infinite() {
        return if a.is_finite() && q < 0.0 { f64::MIN } else { q };
    }
    if q.abs() < RESIDUAL_SAFE || a.abs() < RESIDUAL_SAFE {
        return q.next_up();
    }
    let r = (-q).mul_add(b, a);
    if r == 0.0 {
        q
    } else if (r < 0.0) == (b < 0.0) {
        q.next_up()
    } else {
        q
    }
}

#[inline]
pub fn sqrt_down(a: f64) -> f64 {
    debug_assert!(a >= 0.0);
    let r = a.sqrt();
    if a == 0.0 || a.is_infinite() {
        return r;
    }
    if a < RESIDUAL_SAFE {
        return r.next_down().max(0.0);
    }
    if (-r).mul_add(r, a) < 0.0 {
        r.next_down()
    } else {
        r
    }
}

#[inline]
pub fn sqrt_up(a: f64) -> f64 {
    debug_assert!(a >= 0.0);
    let r = a.sqrt();
    if a == 0.0 || a.is_infinite() {
        return r;
    }
    if a < RESIDUAL_SAFE {
        return r.next_up();
    }
    if (-r).mul_add(r, a) > 0.0 {
        r.next_up()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_operations_are_not_widened() {
        assert_eq!(add_down(1.0, 2.0), 3.0);
        assert_eq!(add_up(1.0, 2.0), 3.0);
        assert_eq!(mul_down(3.0, 0.5), 1.5);
        assert_eq!(div_up(6.0, 3.0), 2.0);
        assert_eq!(sqrt_down(4.0), 2.0);
        assert_eq!(sqrt_up(4.0), 2.0);
    }

    #[test]
    fn inexact_operations_bracket_the_exact_value() {
        // 0.1 + 0.2 is inexact in binary64.
        let (lo, hi) = (add_down(0.1, 0.2), add_up(0.1, 0.2));
        assert!(lo < hi);
        assert_eq!(hi, lo.next_up());
        let (lo, hi) = (div_down(1.0, 3.0), div_up(1.0, 3.0));
        assert_eq!(hi, lo.next_up());
        // 3 * (1/3) straddles 1.
        assert!(mul_down(lo, 3.0) < 1.0 && mul_up(hi, 3.0) > 1.0);
        let (lo, hi) = (sqrt_down(2.0), sqrt_up(2.0));
        assert!(mul_down(lo, lo) < 2.0 && mul_up(hi, hi) > 2.0);
    }

    #[test]
    fn negative_divisors_round_the_right_way() {
        let lo = div_down(1.0, -3.0);
        let hi = div_up(1.0, -3.0);
        assert_eq!(hi, lo.next_up());
        assert!(lo < -1.0 / 3.0 || hi > -1.0 / 3.0);
    }

    #[test]
    fn overflow_saturates() {
        assert_eq!(add_down(f64::MAX, f64::MAX), f64::MAX);
        assert_eq!(add_up(f64::MAX, f64::MAX), f64::INFINITY);
        assert_eq!(mul_down(-f64::MAX, 2.0), f64::NEG_INFINITY);
        assert_eq!(mul_up(-f64::MAX, 2.0), f64::MIN);
        assert_eq!(mul_up(0.0, f64::INFINITY), 0.0);
    }

    #[test]
    fn tiny_products_are_widened() {
        let a = 1e-200;
        assert!(mul_down(a, a) <= 0.0 + f64::from_bits(1));
        assert!(mul_up(a, a) > 0.0);
    }
}
