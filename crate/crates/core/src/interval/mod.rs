//! Closed real intervals with outward rounding.
//!
//! Every arithmetic result is an enclosure: for all `x` in `a` and `y` in
//! `b`, `x op y` lies in `a.op(b)`. Rounding is directed by error-free
//! transformations (see [`round`]), so results are as tight as true
//! round-down / round-up arithmetic would give, and the FPU rounding mode is
//! never changed. Operations are pure and `Interval` is `Copy`, so values
//! can be shared freely across threads.
//!
//! Endpoints may be infinite (`hi = +inf` is how tail envelopes saturate),
//! but never NaN, and `lo = +inf` / `hi = -inf` are rejected.

mod decimal;
mod elementary;
pub(crate) mod round;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use decimal::{format_down, format_up};
pub use elementary::{HALF_PI, LN_2, PI};

/// Exact rational numbers used for exponents.
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("DivisionByZeroInterval: divisor {0} contains zero")]
    DivisionByZeroInterval(Interval),
    #[error("DomainError: {op} is undefined on {arg}")]
    DomainError { op: &'static str, arg: Interval },
    #[error("invalid interval bounds [{0}, {1}]")]
    InvalidBounds(f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// `[-1, 1]`, the range of sine and cosine.
    pub const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(IntervalError::InvalidBounds(lo, hi));
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval `[x, x]`. Panics on NaN or an infinite `x`.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "point interval from non-finite {x}");
        Interval { lo: x, hi: x }
    }

    /// Internal constructor for endpoints already known to be ordered.
    #[inline]
    pub(crate) fn raw(lo: f64, hi: f64) -> Self {
        debug_assert!(!(lo > hi) && !lo.is_nan() && !hi.is_nan(), "[{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Enclosure of an integer; exact when `|n| <= 2^53`.
    pub fn from_i128(n: i128) -> Self {
        let x = n as f64;
        if x.abs() <= 9_007_199_254_740_992.0 {
            Interval::raw(x, x)
        } else {
            Interval::raw(x.next_down(), x.next_up())
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        let num = Interval::from_i128(*r.numer() as i128);
        let den = Interval::from_i128(*r.denom() as i128);
        num.div(den).expect("rational denominators are nonzero")
    }

    /// Hull of two values, in either order.
    pub fn hull_of(a: f64, b: f64) -> Result<Self, IntervalError> {
        Interval::new(a.min(b), a.max(b))
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Width, rounded up.
    pub fn width(&self) -> f64 {
        round::sub_up(self.hi, self.lo)
    }

    /// A point inside the interval (not an enclosure of anything).
    pub fn mid(&self) -> f64 {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => {
                let m = 0.5 * self.lo + 0.5 * self.hi;
                m.clamp(self.lo, self.hi)
            }
            (false, true) => self.hi.min(0.0),
            (true, false) => self.lo.max(0.0),
            (false, false) => 0.0,
        }
    }

    /// Largest absolute value.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value.
    pub fn mig(&self) -> f64 {
        if self.lo > 0.0 {
            self.lo
        } else if self.hi < 0.0 {
            -self.hi
        } else {
            0.0
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Strict interior inclusion, `other.lo < self.lo && self.hi < other.hi`.
    pub fn is_interior_to(&self, lo: f64, hi: f64) -> bool {
        lo < self.lo && self.hi < hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::raw(lo, hi))
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Raise the lower endpoint to at least `floor`. Used where the exact
    /// quantity is known to be `>= floor` but rounding crept below it.
    pub fn clip_below(&self, floor: f64) -> Interval {
        Interval::raw(self.lo.max(floor), self.hi.max(floor))
    }

    /// Widen outward by `[-e, e]` (e >= 0).
    pub fn inflate(&self, e: f64) -> Interval {
        Interval::raw(round::sub_down(self.lo, e), round::add_up(self.hi, e))
    }

    pub fn div(self, rhs: Interval) -> Result<Interval, IntervalError> {
        if rhs.contains_zero() {
            return Err(IntervalError::DivisionByZeroInterval(rhs));
        }
        let all_finite = self.lo.is_finite() && self.hi.is_finite() && rhs.lo.is_finite() && rhs.hi.is_finite();
        if !all_finite {
            return Ok(self * rhs.recip_nonzero());
        }
        let cands = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in cands {
            lo = lo.min(round::div_down(a, b));
            hi = hi.max(round::div_up(a, b));
        }
        Ok(Interval::raw(lo, hi))
    }

    /// Reciprocal of an interval that excludes zero.
    fn recip_nonzero(&self) -> Interval {
        debug_assert!(!self.contains_zero());
        Interval::raw(round::div_down(1.0, self.hi), round::div_up(1.0, self.lo))
    }

    pub fn recip(&self) -> Result<Interval, IntervalError> {
        if self.contains_zero() {
            return Err(IntervalError::DivisionByZeroInterval(*self));
        }
        Ok(self.recip_nonzero())
    }

    pub fn sqr(&self) -> Interval {
        let lo = self.mig();
        let hi = self.mag();
        Interval::raw(round::mul_down(lo, lo), round::mul_up(hi, hi))
    }

    pub fn abs(&self) -> Interval {
        Interval::raw(self.mig(), self.mag())
    }

    /// Scale by an exactly representable power of two (or any `f64`).
    pub fn scale(&self, c: f64) -> Interval {
        *self * Interval::point(c)
    }

    /// Render as `[lo, hi]` with `sig` significant digits, rounding the
    /// decimal endpoints outward so the text is itself an enclosure.
    pub fn to_decimal(&self, sig: usize) -> String {
        format!("[{}, {}]", format_down(self.lo, sig), format_up(self.hi, sig))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(17);
        f.write_str(&self.to_decimal(sig))
    }
}

/// Serialized as `["lo", "hi"]`: outward-rounded decimal strings.
impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&format_down(self.lo, 17))?;
        seq.serialize_element(&format_up(self.hi, 17))?;
        seq.end()
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval::raw(round::add_down(self.lo, rhs.lo), round::add_up(self.hi, rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval::raw(round::sub_down(self.lo, rhs.hi), round::sub_up(self.hi, rhs.lo))
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        // Sign-case split keeps the common nonnegative case to two products.
        if self.lo >= 0.0 && rhs.lo >= 0.0 {
            return Interval::raw(round::mul_down(self.lo, rhs.lo), round::mul_up(self.hi, rhs.hi));
        }
        let cands = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in cands {
            lo = lo.min(round::mul_down(a, b));
            hi = hi.max(round::mul_up(a, b));
        }
        Interval::raw(lo, hi)
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    fn add(self, rhs: f64) -> Interval {
        self + Interval::point(rhs)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn add_encloses_with_tight_width() {
        let s = iv(1.0, 2.0) + iv(3.0, 4.0);
        assert!(s.contains(4.0) && s.contains(6.0));
        assert!(s.lo() >= 4.0 - 2.0 * f64::EPSILON * 4.0);
        assert!(s.hi() <= 6.0 + 2.0 * f64::EPSILON * 6.0);
    }

    #[test]
    fn zero_is_additive_identity() {
        let a = iv(0.3, 0.7);
        let s = Interval::ZERO + a;
        assert!(a.is_subset_of(&s));
        assert!(s.lo() >= a.lo().next_down() && s.hi() <= a.hi().next_up());
    }

    #[test]
    fn mul_examples() {
        let p = iv(-1.0, 2.0) * iv(3.0, 4.0);
        assert!(p.contains(-4.0) && p.contains(8.0));
        assert!((iv(2.0, 2.0) * iv(3.0, 3.0)).contains(6.0));
        assert_eq!(Interval::ZERO * Interval::ENTIRE, Interval::ZERO);
    }

    #[test]
    fn division_by_interval_containing_zero_fails() {
        let err = iv(1.0, 2.0).div(iv(-1.0, 1.0)).unwrap_err();
        assert!(matches!(err, IntervalError::DivisionByZeroInterval(_)));
        assert!(err.to_string().starts_with("DivisionByZeroInterval"));
        let q = iv(1.0, 1.0).div(iv(3.0, 3.0)).unwrap();
        assert!(q.contains(1.0 / 3.0));
    }

    #[test]
    fn infinite_endpoints_never_produce_nan() {
        let half_line = iv(1.0, f64::INFINITY);
        let r = half_line * iv(-2.0, 0.0);
        assert!(!r.lo().is_nan() && !r.hi().is_nan());
        assert_eq!(r.lo(), f64::NEG_INFINITY);
        let q = iv(1.0, 2.0).div(half_line).unwrap();
        assert_eq!(q.lo(), 0.0);
        assert!(q.hi() >= 2.0);
        let q = half_line.div(half_line).unwrap();
        assert!(!q.lo().is_nan() && !q.hi().is_nan());
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(f64::INFINITY, f64::INFINITY).is_err());
    }

    #[test]
    fn rational_conversion_contains_value() {
        let r = Interval::from_rational(Rational::new(5, 16));
        assert!(r.is_point() && r.lo() == 0.3125);
        let t = Interval::from_rational(Rational::new(1, 10));
        assert!(t.lo() < t.hi() && t.contains(0.1));
    }

    #[test]
    fn display_is_outward() {
        let t = Interval::from_rational(Rational::new(1, 3));
        let s = format!("{:.5}", t);
        assert_eq!(s, "[0.33333, 0.33334]");
    }
}
