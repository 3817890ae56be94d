//! Rigorous elementary functions.
//!
//! Each function first encloses its value at the endpoints using only the
//! directed-rounding primitives: argument reduction against stored
//! enclosures of pi and ln 2, a truncated Taylor (or atanh) series evaluated
//! in interval arithmetic, and an explicit bound on the truncation
//! remainder. Monotonicity, or the location of critical points for cosine,
//! then turns endpoint enclosures into a range enclosure. The platform libm
//! is never trusted.

use super::{round, Interval, IntervalError, Rational};

/// pi lies in `[0x1.921fb54442d18p+1, next_up]`: the binary64 nearest pi is
/// below it by about 1.2e-16.
pub const PI: Interval = Interval {
    lo: std::f64::consts::PI,
    hi: 3.141_592_653_589_793_6,
};

/// pi / 2, obtained by exact halving of [`PI`].
pub const HALF_PI: Interval = Interval {
    lo: std::f64::consts::FRAC_PI_2,
    hi: 1.570_796_326_794_896_8,
};

/// ln 2 lies in `[0x1.62e42fefa39efp-1, next_up]`.
pub const LN_2: Interval = Interval {
    lo: std::f64::consts::LN_2,
    hi: 0.693_147_180_559_945_4,
};

const EXP_TERMS: u32 = 18;
const LOG_TERMS: u32 = 14;
const TRIG_TERMS: u32 = 11;
/// Beyond this the reduced argument is too wide to be useful.
const TRIG_REDUCTION_LIMIT: f64 = 1.0e12;

fn div_int(x: Interval, n: u32) -> Interval {
    x.div(Interval::from_i128(n as i128)).expect("nonzero")
}

/// `n!` as an enclosure.
fn factorial(n: u32) -> Interval {
    (1..=n).fold(Interval::ONE, |acc, k| acc * Interval::from_i128(k as i128))
}

/// `2^k` times `x`, exact unless the result leaves the normal range.
fn ldexp(x: Interval, k: i32) -> Interval {
    let mut x = x;
    let mut k = k;
    while k != 0 {
        let step = k.clamp(-1000, 1000);
        let factor = f64::from_bits(((1023 + step) as u64) << 52);
        x = x * Interval::point(factor);
        k -= step;
    }
    x
}

/// Enclosure of `exp(y)` for `|y| <= 0.5`.
fn exp_reduced(y: Interval) -> Interval {
    debug_assert!(y.mag() <= 0.5);
    let mut acc = Interval::ONE;
    for n in (1..=EXP_TERMS).rev() {
        acc = Interval::ONE + div_int(y * acc, n);
    }
    // |remainder| <= |y|^(N+1)/(N+1)! * e^|y| and e^0.5 < 2.
    let tail = Interval::point(y.mag()).powi_point(EXP_TERMS as u64 + 1) * 2.0;
    let tail = tail.div(factorial(EXP_TERMS + 1)).expect("nonzero").hi();
    acc.inflate(tail)
}

fn exp_point(x: f64) -> Interval {
    if x == 0.0 {
        return Interval::ONE;
    }
    if x == f64::INFINITY || x >= 710.0 {
        return Interval::raw(f64::MAX, f64::INFINITY);
    }
    if x == f64::NEG_INFINITY {
        return Interval::ZERO;
    }
    if x <= -746.0 {
        return Interval::raw(0.0, f64::from_bits(1));
    }
    let k = (x / std::f64::consts::LN_2).round();
    let y = Interval::point(x) - Interval::point(k) * LN_2;
    ldexp(exp_reduced(y), k as i32).clip_below(0.0)
}

/// Enclosure of `ln(x)` for finite `x > 0`.
fn ln_point(x: f64) -> Interval {
    debug_assert!(x > 0.0);
    if x == 1.0 {
        return Interval::ZERO;
    }
    if x == f64::INFINITY {
        return Interval::raw(f64::MAX, f64::INFINITY);
    }
    // x = m * 2^e with m in [sqrt(1/2), sqrt(2)).
    let (mut bits_x, mut bias) = (x, 0i64);
    if x < f64::MIN_POSITIVE {
        bits_x = x * 2f64.powi(54);
        bias = -54;
    }
    let bits = bits_x.to_bits();
    let mut e = ((bits >> 52) & 0x7ff) as i64 - 1023;
    let mut m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1023u64 << 52));
    if m > std::f64::consts::SQRT_2 {
        m *= 0.5;
        e += 1;
    }
    e += bias;
    let mi = Interval::point(m);
    let z = (mi - Interval::ONE).div(mi + Interval::ONE).expect("m > 0");
    let z2 = z.sqr();
    // atanh(z) = z * sum z^(2k) / (2k+1)
    let mut acc = div_int(Interval::ONE, 2 * LOG_TERMS + 1);
    for k in (0..LOG_TERMS).rev() {
        acc = div_int(Interval::ONE, 2 * k + 1) + z2 * acc;
    }
    let atanh = z * acc;
    // |z| <= 0.1716, so the remainder is below |z|^(2N+3) / ((2N+3)(1 - z^2))
    // < 1.1 |z|^(2N+3) / (2N+3).
    let zm = Interval::point(z.mag()).powi_point(2 * LOG_TERMS as u64 + 3);
    let tail = div_int(zm * 1.1, 2 * LOG_TERMS + 3).hi();
    let ln_m = atanh.inflate(tail).scale(2.0);
    Interval::from_i128(e as i128) * LN_2 + ln_m
}

/// `(sin y, cos y)` enclosures for `|y| <= 0.8`.
fn sin_cos_reduced(y: Interval) -> (Interval, Interval) {
    debug_assert!(y.mag() <= 0.8);
    let y2 = y.sqr();
    // sin y = y (1 - y^2/(2*3) (1 - y^2/(4*5) (...)))
    let mut s = Interval::ONE;
    let mut c = Interval::ONE;
    for k in (1..=TRIG_TERMS).rev() {
        s = Interval::ONE - div_int(y2 * s, (2 * k) * (2 * k + 1));
        c = Interval::ONE - div_int(y2 * c, (2 * k - 1) * (2 * k));
    }
    let s = y * s;
    // Alternating series remainders are bounded by the first omitted term.
    let ym = Interval::point(y.mag());
    let s_tail = ym
        .powi_point(2 * TRIG_TERMS as u64 + 3)
        .div(factorial(2 * TRIG_TERMS + 3));
    let c_tail = ym
        .powi_point(2 * TRIG_TERMS as u64 + 2)
        .div(factorial(2 * TRIG_TERMS + 2));
    (
        s.inflate(s_tail.expect("nonzero").hi()),
        c.inflate(c_tail.expect("nonzero").hi()),
    )
}

/// `(sin x, cos x)` enclosures at a point.
fn sin_cos_point(x: f64) -> (Interval, Interval) {
    if !x.is_finite() || x.abs() > TRIG_REDUCTION_LIMIT {
        return (Interval::UNIT, Interval::UNIT);
    }
    let k = (x / std::f64::consts::FRAC_PI_2).round();
    let y = Interval::point(x) - Interval::point(k) * HALF_PI;
    let (s, c) = sin_cos_reduced(y);
    let (s, c) = match (k as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    (clamp_unit(s), clamp_unit(c))
}

fn clamp_unit(x: Interval) -> Interval {
    Interval::raw(x.lo.clamp(-1.0, 1.0), x.hi.clamp(-1.0, 1.0))
}

impl Interval {
    /// `x^n` for a point `x >= 0`, by binary powering.
    fn powi_point(&self, n: u64) -> Interval {
        debug_assert!(self.lo >= 0.0);
        let mut result = Interval::ONE;
        let mut base = *self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result * base;
            }
            n >>= 1;
            if n > 0 {
                base = base * base;
            }
        }
        result
    }

    pub fn exp(&self) -> Interval {
        Interval::raw(exp_point(self.lo).lo, exp_point(self.hi).hi)
    }

    /// Natural logarithm; `ln 0 = -inf`. Negative arguments are a domain
    /// error.
    pub fn ln(&self) -> Result<Interval, IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::DomainError { op: "ln", arg: *self });
        }
        if self.hi == 0.0 {
            return Err(IntervalError::DomainError { op: "ln", arg: *self });
        }
        let lo = if self.lo == 0.0 {
            f64::NEG_INFINITY
        } else {
            ln_point(self.lo).lo
        };
        Ok(Interval::raw(lo, ln_point(self.hi).hi))
    }

    pub fn sqrt(&self) -> Result<Interval, IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::DomainError { op: "sqrt", arg: *self });
        }
        Ok(Interval::raw(round::sqrt_down(self.lo), round::sqrt_up(self.hi)))
    }

    /// Integer power. Negative exponents need an argument excluding zero,
    /// except that `[0, b]^(-n)` saturates to `[b^(-n), +inf]`.
    pub fn powi(&self, n: i64) -> Result<Interval, IntervalError> {
        if n == 0 {
            return Ok(Interval::ONE);
        }
        let m = n.unsigned_abs();
        let pos = if m.is_multiple_of(2) {
            let a = self.abs();
            Interval::raw(
                Interval::point(a.lo).powi_point_any(m).lo,
                Interval::point(a.hi).powi_point_any(m).hi,
            )
        } else {
            Interval::raw(
                Interval::point_any(self.lo).odd_pow(m).lo,
                Interval::point_any(self.hi).odd_pow(m).hi,
            )
        };
        if n > 0 {
            return Ok(pos);
        }
        if pos.lo == 0.0 && pos.hi > 0.0 {
            return Ok(Interval::raw(round::div_down(1.0, pos.hi), f64::INFINITY));
        }
        pos.recip()
            .map_err(|_| IntervalError::DomainError { op: "powi", arg: *self })
    }

    /// Point interval allowing infinite values (internal use).
    fn point_any(x: f64) -> Interval {
        Interval::raw(x, x)
    }

    fn powi_point_any(&self, n: u64) -> Interval {
        if self.lo.is_infinite() {
            return Interval::raw(f64::INFINITY.min(f64::MAX), f64::INFINITY);
        }
        self.powi_point(n)
    }

    fn odd_pow(&self, n: u64) -> Interval {
        if self.lo >= 0.0 {
            if self.lo.is_infinite() {
                return Interval::raw(f64::MAX, f64::INFINITY);
            }
            self.powi_point(n)
        } else if self.lo.is_infinite() {
            Interval::raw(f64::NEG_INFINITY, f64::MIN)
        } else {
            -Interval::point(-self.lo).powi_point(n)
        }
    }

    /// `x^q` for rational `q`. Integer exponents accept any sign of base;
    /// other exponents require `lo >= 0` and treat `0^q` exactly (0 for
    /// `q > 0`, `+inf` for `q < 0`). Half-integer exponents go through the
    /// correctly rounded square root; the rest through `exp(q ln x)`.
    pub fn pow_real(&self, q: Rational) -> Result<Interval, IntervalError> {
        if *q.denom() == 1 {
            return self.powi(*q.numer());
        }
        if self.lo < 0.0 {
            return Err(IntervalError::DomainError {
                op: "pow_real",
                arg: *self,
            });
        }
        if *q.denom() == 2 {
            return self.sqrt()?.powi(*q.numer());
        }
        let qi = Interval::from_rational(q);
        let at = |x: f64| -> Interval {
            if x == 0.0 {
                if q > Rational::from_integer(0) {
                    Interval::ZERO
                } else {
                    Interval::raw(f64::INFINITY.min(f64::MAX), f64::INFINITY)
                }
            } else if x == f64::INFINITY {
                if q > Rational::from_integer(0) {
                    Interval::raw(f64::MAX, f64::INFINITY)
                } else {
                    Interval::ZERO
                }
            } else {
                (qi * ln_point(x)).exp()
            }
        };
        let (a, b) = (at(self.lo), at(self.hi));
        if q > Rational::from_integer(0) {
            Ok(Interval::raw(a.lo, b.hi))
        } else {
            Ok(Interval::raw(b.lo, a.hi))
        }
    }

    /// Range of cosine: endpoint enclosures plus the extrema at any
    /// multiple of pi the interval might contain.
    pub fn cos(&self) -> Interval {
        if !self.lo.is_finite() || !self.hi.is_finite() {
            return Interval::UNIT;
        }
        if self.width() >= 2.0 * PI.lo {
            return Interval::UNIT;
        }
        // Candidate k with k*pi in [lo, hi]; a superset is harmless.
        let a = Interval::point(self.lo).div(PI).expect("pi > 0");
        let b = Interval::point(self.hi).div(PI).expect("pi > 0");
        let k_min = a.lo.ceil();
        let k_max = b.hi.floor();
        let mut has_max = false;
        let mut has_min = false;
        let mut k = k_min;
        while k <= k_max && !(has_max && has_min) {
            if (k as i64).rem_euclid(2) == 0 {
                has_max = true;
            } else {
                has_min = true;
            }
            k += 1.0;
        }
        let ca = sin_cos_point(self.lo).1;
        let cb = sin_cos_point(self.hi).1;
        let lo = if has_min { -1.0 } else { ca.lo.min(cb.lo) };
        let hi = if has_max { 1.0 } else { ca.hi.max(cb.hi) };
        Interval::raw(lo, hi)
    }

    pub fn sin(&self) -> Interval {
        if self.is_point() {
            return sin_cos_point(self.lo).0;
        }
        (*self - HALF_PI).cos()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn constants_are_one_ulp_wide() {
        assert_eq!(PI.hi, PI.lo.next_up());
        assert_eq!(HALF_PI.lo * 2.0, PI.lo);
        assert_eq!(HALF_PI.hi * 2.0, PI.hi);
        assert_eq!(LN_2.hi, LN_2.lo.next_up());
    }

    #[test]
    fn exp_basics() {
        assert!(Interval::ZERO.exp().contains(1.0));
        let e = Interval::ONE.exp();
        assert!(e.contains(std::f64::consts::E));
        assert!(e.width() <= 4.0 * f64::EPSILON * 3.0);
        let tiny = iv(-150.0, -150.0).exp();
        assert!(tiny.lo() > 0.0);
        assert!((tiny.mid() / (-150f64).exp() - 1.0).abs() < 1e-13);
        assert_eq!(iv(0.0, 800.0).exp().hi(), f64::INFINITY);
    }

    #[test]
    fn ln_basics() {
        assert!(iv(2.0, 2.0).ln().unwrap().contains(std::f64::consts::LN_2));
        let l = iv(1e-310, 10.0).ln().unwrap();
        assert!(l.contains(10f64.ln()) && l.contains((1e-310f64).ln()));
        assert_eq!(iv(0.0, 1.0).ln().unwrap().lo(), f64::NEG_INFINITY);
        assert!(iv(-1.0, 1.0).ln().is_err());
    }

    #[test]
    fn pow_real_examples() {
        let p = iv(0.0, 1.0).pow_real(Rational::from_integer(6)).unwrap();
        assert!(iv(0.0, 1.0).is_subset_of(&p) && p.lo() == 0.0);
        assert!(iv(4.0, 4.0).pow_real(Rational::new(1, 2)).unwrap().contains(2.0));
        let r = iv(0.0, 8.0).pow_real(Rational::new(1, 3)).unwrap();
        assert_eq!(r.lo(), 0.0);
        assert!(r.contains(2.0) && r.hi() < 2.0 + 1e-14);
        assert!(iv(-1.0, 1.0).pow_real(Rational::new(1, 3)).is_err());
        let neg = iv(0.0, 4.0).pow_real(Rational::new(-5, 2)).unwrap();
        assert_eq!(neg.hi(), f64::INFINITY);
        assert!(neg.contains(1.0 / 32.0));
    }

    #[test]
    fn powi_of_signed_intervals() {
        let even = iv(-2.0, 1.0).powi(2).unwrap();
        assert_eq!((even.lo(), even.hi()), (0.0, 4.0));
        let odd = iv(-2.0, 1.0).powi(3).unwrap();
        assert_eq!((odd.lo(), odd.hi()), (-8.0, 1.0));
        assert!(iv(-1.0, 1.0).powi(-1).is_err());
    }

    #[test]
    fn cos_examples() {
        let c = iv(0.0, std::f64::consts::PI).cos();
        assert_eq!((c.lo(), c.hi()), (-1.0, 1.0));
        assert!(Interval::ZERO.cos().contains(1.0));
        let c = HALF_PI.cos();
        assert!(c.contains(0.0) && c.width() < 1e-15);
        // Argument near the top of the range used by the integrands.
        let x = 312.5;
        let c = iv(x, x).cos();
        assert!(c.contains(x.cos()) && c.width() < 1e-12);
    }

    #[test]
    fn sin_matches_libm_roughly() {
        for &x in &[0.1, 1.0, 2.5, -3.0, 100.0, 1e6] {
            let s = iv(x, x).sin();
            assert!((s.mid() - x.sin()).abs() < 1e-9, "{x}");
            assert!(s.contains(x.sin()) || s.width() > 0.0);
        }
    }
}
