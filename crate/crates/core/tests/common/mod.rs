//! Independent reference values for the interval tests.
//!
//! Arithmetic is checked exactly against `BigRational`; transcendental
//! functions against 256-bit `astro-float` evaluations with a relative
//! slack far below one ulp of f64.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

pub fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// `lo <= v <= hi` with exact rationals; infinite endpoints always pass.
pub fn encloses_exact(lo: f64, hi: f64, v: &BigRational) -> bool {
    (lo == f64::NEG_INFINITY || exact(lo) <= *v) && (hi == f64::INFINITY || exact(hi) >= *v)
}

pub struct Oracle {
    cc: Consts,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cc: Consts::new().expect("astro-float constants"),
        }
    }
}

impl Oracle {
    fn big(x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    pub fn exp(&mut self, x: f64) -> BigFloat {
        Self::big(x).exp(PREC, RM, &mut self.cc)
    }

    pub fn ln(&mut self, x: f64) -> BigFloat {
        Self::big(x).ln(PREC, RM, &mut self.cc)
    }

    pub fn sqrt(&mut self, x: f64) -> BigFloat {
        Self::big(x).sqrt(PREC, RM)
    }

    pub fn sin(&mut self, x: f64) -> BigFloat {
        Self::big(x).sin(PREC, RM, &mut self.cc)
    }

    pub fn cos(&mut self, x: f64) -> BigFloat {
        Self::big(x).cos(PREC, RM, &mut self.cc)
    }

    /// `x^(n/d)` for `x > 0`.
    pub fn pow(&mut self, x: f64, n: i64, d: i64) -> BigFloat {
        let q = BigFloat::from_i64(n, PREC).div(&BigFloat::from_i64(d, PREC), PREC, RM);
        let l = self.ln(x).mul(&q, PREC, RM);
        l.exp(PREC, RM, &mut self.cc)
    }

    /// `lo <= v <= hi` up to a relative slack of 2^-240.
    pub fn encloses(&self, lo: f64, hi: f64, v: &BigFloat) -> bool {
        let slack = v.abs().mul(&BigFloat::from_f64(2f64.powi(-240), PREC), PREC, RM);
        let up = v.add(&slack, PREC, RM);
        let down = v.sub(&slack, PREC, RM);
        (lo == f64::NEG_INFINITY || Self::big(lo) <= up) && (hi == f64::INFINITY || Self::big(hi) >= down)
    }
}

/// A finite double whose magnitude is log-uniform in `[10^lo_exp, 10^hi_exp]`.
pub fn log_uniform(rng: &mut ChaCha8Rng, lo_exp: f64, hi_exp: f64) -> f64 {
    10f64.powf(rng.gen_range(lo_exp..hi_exp))
}

pub fn signed_log_uniform(rng: &mut ChaCha8Rng, lo_exp: f64, hi_exp: f64) -> f64 {
    let x = log_uniform(rng, lo_exp, hi_exp);
    if rng.gen() {
        x
    } else {
        -x
    }
}

/// A point in `[a, b]`, biased towards the endpoints.
pub fn inside(rng: &mut ChaCha8Rng, a: f64, b: f64) -> f64 {
    match rng.gen_range(0..4) {
        0 => a,
        1 => b,
        _ => (a + (b - a) * rng.gen::<f64>()).clamp(a, b),
    }
}

/// A width relative to `|a|`: zero, a few ulps, or a macroscopic fraction.
pub fn width(rng: &mut ChaCha8Rng, a: f64) -> f64 {
    match rng.gen_range(0..4) {
        0 => 0.0,
        1 => a.abs() * f64::EPSILON * rng.gen_range(1.0..8.0),
        2 => a.abs() * rng.gen_range(0.0..1e-3),
        _ => a.abs().max(1e-300) * rng.gen_range(0.0..1.0),
    }
}
