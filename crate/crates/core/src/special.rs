//! Closed-form constants: Γ at half-integers, the Γ-ratio κ_q, the
//! lower-bound factor κ_q^{1/q}·2^{1/p'}, and the averaging function
//! φ(t) = (1/π)∫₀^π (1 + t cos θ)^{q/2} dθ.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{Interval, IntervalError, Rational, PI};
use crate::quad::{self, Integrand, IntegrationBox, QuadError};

#[derive(Debug, Error)]
pub enum SpecialError {
    #[error("UnsupportedArgument: {0}")]
    UnsupportedArgument(String),
    #[error("DomainError: {0}")]
    DomainError(String),
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Quad(#[from] Box<QuadError>),
}

impl From<QuadError> for SpecialError {
    fn from(e: QuadError) -> Self {
        SpecialError::Quad(Box::new(e))
    }
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Dimension and Lebesgue exponents of an extension estimate
/// `‖E f‖_q ≤ A_p ‖f‖_p` with `q = (d+2)/d · p'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exponents {
    d: u32,
    #[serde(serialize_with = "ser_rational")]
    p: Rational,
    #[serde(serialize_with = "ser_rational")]
    q: Rational,
    #[serde(serialize_with = "ser_rational")]
    p_conj: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Exponents {
    /// Exponents for dimension `d` and `p > 1`; `q` follows from the
    /// scaling relation and must exceed `p`.
    pub fn new(d: u32, p: Rational) -> Result<Self, SpecialError> {
        if d == 0 {
            return Err(SpecialError::InvalidExponents("dimension must be positive".into()));
        }
        if p <= ri(1) {
            return Err(SpecialError::InvalidExponents(format!("p = {p} must exceed 1")));
        }
        let p_conj = p / (p - ri(1));
        let q = Rational::new(d as i64 + 2, d as i64) * p_conj;
        if q <= p {
            return Err(SpecialError::InvalidExponents(format!("q = {q} must exceed p = {p}")));
        }
        Ok(Exponents { d, p, q, p_conj })
    }

    /// `p = 2`, `q = 2(d+2)/d`.
    pub fn stein_tomas(d: u32) -> Self {
        Exponents::new(d, ri(2)).expect("d >= 1")
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn p(&self) -> Rational {
        self.p
    }

    pub fn q(&self) -> Rational {
        self.q
    }

    pub fn p_conj(&self) -> Rational {
        self.p_conj
    }

    /// Certified mode needs Γ(d/2) at a half-integer and the Stein-Tomas
    /// pair, which holds for `d ∈ {1, 2}`.
    pub fn is_certifiable(&self) -> bool {
        matches!(self.d, 1 | 2) && self.p == ri(2)
    }

    /// `d(1-q)/2`, the exponent of `(1+t²)` in the polar integrand.
    pub fn time_exponent(&self) -> Rational {
        Rational::new(self.d as i64, 2) * (ri(1) - self.q)
    }
}

/// Γ(z) = `coeff` · √π^`sqrt_pi` for a positive integer or half-integer z.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ExactGamma {
    coeff: Ratio<i128>,
    sqrt_pi: bool,
}

fn half_integer_parts(z: Rational) -> Result<(i64, bool), SpecialError> {
    if z <= ri(0) {
        return Err(SpecialError::UnsupportedArgument(format!("Γ({z}) needs z > 0")));
    }
    match *z.denom() {
        1 => Ok((*z.numer(), false)),
        2 => Ok((*z.numer(), true)),
        _ => Err(SpecialError::UnsupportedArgument(format!(
            "Γ({z}): 2z is not an integer"
        ))),
    }
}

fn checked_mul(a: Ratio<i128>, b: Ratio<i128>) -> Option<Ratio<i128>> {
    let n = a.numer().checked_mul(*b.numer())?;
    let d = a.denom().checked_mul(*b.denom())?;
    Some(Ratio::new(n, d))
}

/// `None` when the coefficient overflows i128.
fn exact_gamma(z: Rational) -> Result<Option<ExactGamma>, SpecialError> {
    let (n, half) = half_integer_parts(z)?;
    let mut coeff = Ratio::<i128>::from_integer(1);
    if half {
        // Γ(n/2) = Γ(1/2) · Π_{k=1}^{(n-1)/2} (2k-1)/2
        for k in 1..=(n - 1) / 2 {
            let f = Ratio::new(2 * k as i128 - 1, 2);
            coeff = match checked_mul(coeff, f) {
                Some(c) => c,
                None => return Ok(None),
            };
        }
    } else {
        for k in 1..n {
            coeff = match checked_mul(coeff, Ratio::from_integer(k as i128)) {
                Some(c) => c,
                None => return Ok(None),
            };
        }
    }
    Ok(Some(ExactGamma { coeff, sqrt_pi: half }))
}

fn ratio_interval(r: Ratio<i128>) -> Interval {
    Interval::from_i128(*r.numer())
        .div(Interval::from_i128(*r.denom()))
        .expect("nonzero denominator")
}

fn sqrt_pi() -> Interval {
    PI.sqrt().expect("pi > 0")
}

/// Enclosure of Γ(z) for positive integers and half-integers, by the
/// recurrence Γ(z+1) = zΓ(z) from Γ(1) = 1 or Γ(1/2) = √π.
pub fn gamma_half_integer(z: Rational) -> Result<Interval, SpecialError> {
    let (n, half) = half_integer_parts(z)?;
    let mut acc = if half { sqrt_pi() } else { Interval::ONE };
    let mut x = if half { Rational::new(1, 2) } else { ri(1) };
    let target = if half { Rational::new(n, 2) } else { ri(n) };
    while x < target {
        acc = acc * Interval::from_rational(x);
        x += ri(1);
    }
    Ok(acc)
}

/// κ_q = Γ((q+1)/2) / (√π Γ((q+2)/2)), the mean of |cos θ|^q over a
/// period. Defined here for integer q, where the √π factors either cancel
/// exactly (even q) or leave 1/π (odd q).
pub fn kappa_for_q(q: Rational) -> Result<Interval, SpecialError> {
    if !q.is_integer() || q <= ri(0) {
        return Err(SpecialError::UnsupportedArgument(format!(
            "κ_q needs q/2 or (q+1)/2 integral, got q = {q}"
        )));
    }
    let a = (q + ri(1)) / ri(2);
    let b = (q + ri(2)) / ri(2);
    if let (Some(ga), Some(gb)) = (exact_gamma(a)?, exact_gamma(b)?) {
        let ratio = ga.coeff / gb.coeff;
        let sqrt_pi_power = ga.sqrt_pi as i32 - gb.sqrt_pi as i32 - 1;
        return Ok(match sqrt_pi_power {
            0 => ratio_interval(ratio),
            -2 => ratio_interval(ratio).div(PI)?,
            _ => unreachable!("a and b differ by 1/2"),
        });
    }
    let num = gamma_half_integer(a)?;
    let den = sqrt_pi() * gamma_half_integer(b)?;
    Ok(num.div(den)?)
}

/// κ_q for the exponents' q.
pub fn gamma_ratio_constant(e: &Exponents) -> Result<Interval, SpecialError> {
    kappa_for_q(e.q)
}

/// κ_q^{1/q} · 2^{1/p'}, the factor in the lower bound on A_p^±.
pub fn lower_bound_factor(e: &Exponents) -> Result<Interval, SpecialError> {
    let kappa = gamma_ratio_constant(e)?;
    let root = kappa.pow_real(e.q.recip())?;
    let two = Interval::point(2.0).pow_real(e.p_conj.recip())?;
    Ok(root * two)
}

/// 2^{1/p'}, the upper bound factor.
pub fn upper_bound_factor(e: &Exponents) -> Result<Interval, SpecialError> {
    Ok(Interval::point(2.0).pow_real(e.p_conj.recip())?)
}

/// c_d = 2π^{d(1+q)/2} / Γ(d/2), the constant in front of the polar form
/// of J(θ).
pub fn polar_constant(e: &Exponents) -> Result<Interval, SpecialError> {
    let d = e.d as i64;
    let pi_power = PI.pow_real(Rational::new(d, 2) * (ri(1) + e.q))?;
    let gamma = gamma_half_integer(Rational::new(d, 2))?;
    Ok(pi_power.scale(2.0).div(gamma)?)
}

/// φ(1) = 2^{q/2}/√π · Γ((q+1)/2)/Γ((q+2)/2) = 2^{q/2} κ_q.
pub fn phi_one_closed_form(q: Rational) -> Result<Interval, SpecialError> {
    let two = Interval::point(2.0).pow_real(q / ri(2))?;
    Ok(two * kappa_for_q(q)?)
}

/// Integrand of φ after θ = πu: `u ↦ (1 + t cos(πu))^{q/2}` on [0, 1].
struct PhiIntegrand {
    t: Interval,
    half_q: Rational,
}

impl Integrand for PhiIntegrand {
    fn dim(&self) -> usize {
        1
    }

    fn eval(&self, cell: &[Interval]) -> Result<Interval, IntervalError> {
        let base = Interval::ONE + self.t * (PI * cell[0]).cos();
        // t ≤ 1 keeps the base nonnegative; rounding may not.
        base.clip_below(0.0).pow_real(self.half_q)
    }

    fn name(&self) -> String {
        format!("phi(t={}, q/2={})", self.t, self.half_q)
    }

    fn is_nonnegative(&self) -> bool {
        true
    }
}

/// Enclosure of φ over every t in `t` by a Riemann enclosure with `steps`
/// cells in θ.
pub fn phi(t: Interval, q: Rational, steps: usize) -> Result<Interval, SpecialError> {
    if t.lo() < 0.0 || t.hi() > 1.0 {
        return Err(SpecialError::DomainError(format!("φ needs t ⊆ [0, 1], got {t}")));
    }
    let half_q = q / ri(2);
    if half_q < ri(1) {
        return Err(SpecialError::DomainError(format!("φ needs q/2 ≥ 1, got q = {q}")));
    }
    let f = PhiIntegrand { t, half_q };
    let unit = IntegrationBox::from_bounds(&[(0.0, 1.0)])?;
    Ok(quad::riemann_enclosure(&f, &unit, &[steps])?)
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotoneReport {
    /// True when consecutive enclosures are strictly ordered.
    pub certified: bool,
    pub points: Vec<(f64, Interval)>,
}

/// Checks that φ increases along `grid` using enclosures at `steps`.
/// A one-point grid is vacuously certified; overlapping enclosures give an
/// inconclusive (not false) report.
pub fn phi_monotone_check(q: Rational, grid: &[f64], steps: usize) -> Result<MonotoneReport, SpecialError> {
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(SpecialError::DomainError("φ grid must be strictly increasing".into()));
    }
    let points = grid
        .iter()
        .map(|&t| Ok((t, phi(Interval::point(t), q, steps)?)))
        .collect::<Result<Vec<_>, SpecialError>>()?;
    let certified = points.windows(2).all(|w| w[0].1.hi() < w[1].1.lo());
    Ok(MonotoneReport { certified, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn gamma_examples() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!(gamma_half_integer(r(1, 2)).unwrap().contains(sqrt_pi));
        assert!(gamma_half_integer(ri(4)).unwrap().contains(6.0));
        let g = gamma_half_integer(r(7, 2)).unwrap();
        // 15√π/8 = 3.32335097044784...
        assert!(g.contains(3.323_350_970_447_842_5));
        assert!(g.width() < 1e-14);
    }

    #[test]
    fn gamma_rejects_other_arguments() {
        for z in [r(1, 3), ri(0), r(-1, 2)] {
            let err = gamma_half_integer(z).unwrap_err();
            assert!(err.to_string().starts_with("UnsupportedArgument"), "{err}");
        }
    }

    #[test]
    fn kappa_is_exact_for_even_q() {
        let k6 = gamma_ratio_constant(&Exponents::stein_tomas(1)).unwrap();
        assert!(k6.is_point() && k6.lo() == 0.3125);
        let k4 = gamma_ratio_constant(&Exponents::stein_tomas(2)).unwrap();
        assert!(k4.is_point() && k4.lo() == 0.375);
    }

    #[test]
    fn kappa_for_odd_q_has_one_over_pi() {
        // q = 3: Γ(2)/(√π Γ(5/2)) = 4/(3π).
        let k = kappa_for_q(ri(3)).unwrap();
        assert!(k.contains(4.0 / (3.0 * std::f64::consts::PI)));
        assert!(k.hi() < 1.0);
    }

    #[test]
    fn kappa_needs_integer_q() {
        assert!(gamma_ratio_constant(&Exponents::stein_tomas(3)).is_err());
    }

    #[test]
    fn exponent_relations() {
        let e = Exponents::stein_tomas(1);
        assert_eq!((e.p(), e.q(), e.p_conj()), (ri(2), ri(6), ri(2)));
        assert_eq!(e.time_exponent(), r(-5, 2));
        assert_eq!(Exponents::stein_tomas(2).q(), ri(4));
        assert_eq!(Exponents::stein_tomas(3).q(), r(10, 3));
        assert!(Exponents::new(1, r(3, 2)).is_ok());
        assert!(Exponents::new(1, r(5, 1)).is_err());
        assert!(Exponents::new(0, ri(2)).is_err());
    }

    #[test]
    fn polar_constant_values() {
        // c_1 = 2π³, c_2 = 2π⁵.
        let pi = std::f64::consts::PI;
        let c1 = polar_constant(&Exponents::stein_tomas(1)).unwrap();
        assert!((c1.mid() - 2.0 * pi.powi(3)).abs() < 1e-12);
        let c2 = polar_constant(&Exponents::stein_tomas(2)).unwrap();
        assert!((c2.mid() - 2.0 * pi.powi(5)).abs() < 1e-10);
    }

    #[test]
    fn phi_at_zero_is_one() {
        let v = phi(Interval::ZERO, ri(6), 16).unwrap();
        assert!(v.contains(1.0) && v.width() < 1e-14);
    }

    #[test]
    fn phi_domain() {
        assert!(phi(Interval::new(0.5, 1.5).unwrap(), ri(6), 4).is_err());
        assert!(phi(Interval::ONE, ri(1), 4).is_err());
    }

    #[test]
    fn phi_one_closed_forms() {
        assert!(phi_one_closed_form(ri(6)).unwrap().contains(2.5));
        assert!(phi_one_closed_form(ri(4)).unwrap().contains(1.5));
    }

    #[test]
    fn monotone_check_cases() {
        let fine = phi_monotone_check(ri(6), &[0.0, 0.5, 1.0], 4096).unwrap();
        assert!(fine.certified);
        assert!(phi_monotone_check(ri(6), &[0.3], 2).unwrap().certified);
        let coarse = phi_monotone_check(ri(6), &[0.0, 0.5, 1.0], 2).unwrap();
        assert_eq!(coarse.points.len(), 3);
        assert!(phi_monotone_check(ri(6), &[0.5, 0.2], 8).is_err());
    }
}
