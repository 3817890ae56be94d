//! The J(θ) pipeline for the Gaussian `f(ξ) = e^{-|ξ|²}`:
//!
//! `J(θ) = c_d ∫∫ (1+t²)^{d(1-q)/2} r^{d-1} e^{-qr²} |cos(θ + tr²/4)|^q dr dt`,
//!
//! certified enclosures of J(0) and J(π/2), the no-oscillation mass M, the
//! θ-mean identity `mean_θ J = κ_q M`, and float-mode oracles.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{Interval, IntervalError, Rational, HALF_PI, PI};
use crate::quad::{self, Integrand, IntegrationBox, QuadCertificate, QuadError, TailBreakdown};
use crate::special::{self, Exponents, SpecialError};
use crate::symmetry::{self, GeneralizedGaussian, Sign, SymmetryError};

#[derive(Debug, Error)]
pub enum StrichartzError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

fn require_certifiable(e: &Exponents) -> Result<(), StrichartzError> {
    if e.is_certifiable() {
        Ok(())
    } else {
        Err(StrichartzError::Unsupported(format!(
            "certified mode needs d in {{1, 2}} and p = 2, got d = {}, p = {}",
            e.d(),
            e.p()
        )))
    }
}

/// `c_d (1+t²)^{d(1-q)/2} r^{d-1} e^{-qr²} |cos(θ + tr²/4)|^q` on `(t, r)`
/// cells; without the cosine factor when `theta` is `None`.
#[derive(Debug, Clone)]
pub struct JIntegrandPolar {
    e: Exponents,
    theta: Option<Interval>,
    c_d: Interval,
    q: Interval,
}

impl JIntegrandPolar {
    pub fn new(e: Exponents, theta: Interval) -> Result<Self, StrichartzError> {
        Self::build(e, Some(theta))
    }

    /// The mass integrand, J with `|cos|^q` replaced by 1.
    pub fn mass(e: Exponents) -> Result<Self, StrichartzError> {
        Self::build(e, None)
    }

    fn build(e: Exponents, theta: Option<Interval>) -> Result<Self, StrichartzError> {
        require_certifiable(&e)?;
        let c_d = special::polar_constant(&e)?;
        Ok(JIntegrandPolar {
            e,
            theta,
            c_d,
            q: Interval::from_rational(e.q()),
        })
    }

    pub fn theta(&self) -> Option<Interval> {
        self.theta
    }

    /// Value on a cell for a given θ enclosure.
    fn eval_at(&self, theta: Option<Interval>, t: Interval, r: Interval) -> Result<Interval, IntervalError> {
        let time = (Interval::ONE + t.sqr()).pow_real(self.e.time_exponent())?;
        let radial = r.powi(self.e.d() as i64 - 1)?;
        let gauss = (-(self.q * r.sqr())).exp();
        let mut v = self.c_d * time * radial * gauss;
        if let Some(th) = theta {
            let phase = th + (t * r.sqr()).scale(0.25);
            v = v * phase.cos().abs().pow_real(self.e.q())?;
        }
        Ok(v.clip_below(0.0))
    }
}

impl Integrand for JIntegrandPolar {
    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, cell: &[Interval]) -> Result<Interval, IntervalError> {
        self.eval_at(self.theta, cell[0], cell[1])
    }

    fn name(&self) -> String {
        match self.theta {
            Some(th) => format!("J_polar(d={}, theta={})", self.e.d(), th),
            None => format!("M_polar(d={})", self.e.d()),
        }
    }

    fn is_nonnegative(&self) -> bool {
        true
    }
}

/// The J integrand with θ = πu as a third (leading) coordinate u ∈ [0, 1].
struct ThetaAveraged(JIntegrandPolar);

impl Integrand for ThetaAveraged {
    fn dim(&self) -> usize {
        3
    }

    fn eval(&self, cell: &[Interval]) -> Result<Interval, IntervalError> {
        self.0.eval_at(Some(PI * cell[0]), cell[1], cell[2])
    }

    fn name(&self) -> String {
        format!("mean_theta_J_polar(d={})", self.0.e.d())
    }

    fn is_nonnegative(&self) -> bool {
        true
    }
}

/// `(T, R)` for a box `[-T, T] x [0, R]`.
fn time_radius(b: &IntegrationBox) -> Result<(f64, f64), StrichartzError> {
    match b.axes() {
        &[(t_lo, t_hi), (0.0, r)] if t_lo == -t_hi => Ok((t_hi, r)),
        _ => Err(StrichartzError::InvalidGrid(format!(
            "expected [-T, T] x [0, R], got {:?}",
            b.axes()
        ))),
    }
}

/// Cell counts giving spacing close to `step` on `[-T, T] x [0, R]`.
/// Spacing is exactly `2T/n_t` and `R/n_r`.
pub fn grid_steps(t_max: f64, r_max: f64, step: f64) -> Result<Vec<usize>, StrichartzError> {
    if !(step > 0.0 && t_max > 0.0 && r_max > 0.0) || !(t_max.is_finite() && r_max.is_finite()) {
        return Err(StrichartzError::InvalidGrid(format!(
            "need positive finite t_max, r_max, step; got {t_max}, {r_max}, {step}"
        )));
    }
    let count = |len: f64| -> Result<usize, StrichartzError> {
        let n = (len / step).round().max(1.0);
        if n > 1e8 {
            return Err(StrichartzError::InvalidGrid(format!(
                "step {step} gives {n} cells on one axis"
            )));
        }
        Ok(n as usize)
    };
    Ok(vec![count(2.0 * t_max)?, count(r_max)?])
}

/// How the box integral is enclosed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Refinement {
    /// Uniform grid only.
    Uniform,
    /// Uniform grid, then adaptive bisection towards `target` width; the
    /// best enclosure is kept if the target is not reached.
    Adaptive { target: f64, max_depth: u32 },
}

fn certify<F: Integrand>(
    f: &F,
    e: &Exponents,
    b: &IntegrationBox,
    steps: &[usize],
    refinement: Refinement,
) -> Result<QuadCertificate, StrichartzError> {
    let (t_max, r_max) = time_radius(b)?;
    let tail = quad::tail_bound_j(e, t_max, r_max)?;
    let start = Instant::now();
    let main = match refinement {
        Refinement::Uniform => quad::riemann_enclosure(f, b, steps)?,
        Refinement::Adaptive { target, max_depth } => match quad::bisect_refine(f, b, steps, target, max_depth) {
            Ok(v) => v,
            Err(QuadError::TargetNotReached { achieved }) => achieved,
            Err(other) => return Err(other.into()),
        },
    };
    Ok(QuadCertificate {
        integrand: f.name(),
        domain: b.clone(),
        steps: steps.to_vec(),
        main,
        tail,
        wall_time_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Certificate for J(θ) on `[-T, T] x [0, R]` plus the tail over the rest.
pub fn j_integral(
    e: &Exponents,
    theta: Interval,
    b: &IntegrationBox,
    steps: &[usize],
) -> Result<QuadCertificate, StrichartzError> {
    j_integral_with(e, theta, b, steps, Refinement::Uniform)
}

pub fn j_integral_with(
    e: &Exponents,
    theta: Interval,
    b: &IntegrationBox,
    steps: &[usize],
    refinement: Refinement,
) -> Result<QuadCertificate, StrichartzError> {
    let f = JIntegrandPolar::new(*e, theta)?;
    certify(&f, e, b, steps, refinement)
}

/// Certificate for the mass M (the J integrand without the cosine).
pub fn mass_integral(e: &Exponents, b: &IntegrationBox, steps: &[usize]) -> Result<QuadCertificate, StrichartzError> {
    let f = JIntegrandPolar::mass(*e)?;
    certify(&f, e, b, steps, Refinement::Uniform)
}

/// M over the whole domain in closed form:
/// `c_d · √π Γ(-s-1/2)/Γ(-s) · Γ(d/2)/(2q^{d/2})` with `s = d(1-q)/2`.
pub fn mass_closed_form(e: &Exponents) -> Result<Interval, StrichartzError> {
    require_certifiable(e)?;
    let s = e.time_exponent();
    let half = Rational::new(1, 2);
    let time = PI.sqrt()? * special::gamma_half_integer(-s - half)?.div(special::gamma_half_integer(-s)?)?;
    let d_half = Rational::new(e.d() as i64, 2);
    let radial =
        special::gamma_half_integer(d_half)?.div(Interval::from_rational(e.q()).pow_real(d_half)?.scale(2.0))?;
    Ok(special::polar_constant(e)? * time * radial)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Inconclusive,
}

/// Outcome of comparing J(0) with J(π/2).
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub dim: u32,
    pub j0: QuadCertificate,
    pub j_half_pi: QuadCertificate,
    /// Certified bound over the complement of the box.
    pub tail: f64,
    pub tail_breakdown: TailBreakdown,
    pub status: Status,
    /// `(J(0).lo - tail) - (J(π/2).hi + tail)`, rounded down; positive iff
    /// certified.
    pub margin: f64,
}

impl Verdict {
    pub fn enclosure_j0(&self) -> Interval {
        self.j0.main
    }

    pub fn enclosure_j_half_pi(&self) -> Interval {
        self.j_half_pi.main
    }
}

/// Certifies `J(π/2) < J(0)` when the box enclosures, widened by the tail
/// bound, are disjoint.
pub fn verify_separation(e: &Exponents, b: &IntegrationBox, steps: &[usize]) -> Result<Verdict, StrichartzError> {
    verify_separation_with(e, b, steps, Refinement::Uniform)
}

pub fn verify_separation_with(
    e: &Exponents,
    b: &IntegrationBox,
    steps: &[usize],
    refinement: Refinement,
) -> Result<Verdict, StrichartzError> {
    let (t_max, r_max) = time_radius(b)?;
    let breakdown = quad::tail_breakdown(e, t_max, r_max)?;
    let j0 = j_integral_with(e, Interval::ZERO, b, steps, refinement)?;
    let jh = j_integral_with(e, HALF_PI, b, steps, refinement)?;
    let tail = breakdown.cover;
    use crate::interval::round::{add_up, sub_down};
    let low = sub_down(j0.main.lo(), tail);
    let high = add_up(jh.main.hi(), tail);
    let margin = sub_down(low, high);
    let status = if high < low {
        Status::Certified
    } else {
        Status::Inconclusive
    };
    Ok(Verdict {
        dim: e.d(),
        j0,
        j_half_pi: jh,
        tail,
        tail_breakdown: breakdown,
        status,
        margin,
    })
}

/// [`verify_separation`] on `[-T, T] x [0, R]` starting at `step` and
/// halving it up to `max_halvings` times until certified. Returns the
/// verdict and the step used.
pub fn verify_with_step_search(
    e: &Exponents,
    t_max: f64,
    r_max: f64,
    step: f64,
    max_halvings: u32,
    refinement: Refinement,
) -> Result<(Verdict, f64), StrichartzError> {
    let b = IntegrationBox::time_radius(t_max, r_max)?;
    let mut h = step;
    let mut k = 0;
    loop {
        let steps = grid_steps(t_max, r_max, h)?;
        let v = verify_separation_with(e, &b, &steps, refinement)?;
        if v.status == Status::Certified || k == max_halvings {
            return Ok((v, h));
        }
        h *= 0.5;
        k += 1;
    }
}

/// Box-level and full-domain comparison of `mean_θ J` against `κ_q M`.
#[derive(Debug, Clone, Serialize)]
pub struct MeanIdentityReport {
    pub dim: u32,
    pub theta_steps: usize,
    pub steps: Vec<usize>,
    pub kappa: Interval,
    /// `∫₀¹ J(πu) du` over the box.
    pub mean_box: Interval,
    pub mass_box: Interval,
    pub kappa_mass_box: Interval,
    /// The identity holds pointwise in (t, r), so the box enclosures must
    /// intersect.
    pub box_consistent: bool,
    /// Present when the box admits a tail bound (T, R >= 1).
    pub tail: Option<f64>,
    pub mean_full: Option<Interval>,
    pub kappa_mass_full: Option<Interval>,
    /// `κ_q` times the closed form of M.
    pub closed_form: Option<Interval>,
    /// Both full-domain enclosures contain the closed form.
    pub closed_form_consistent: Option<bool>,
}

impl MeanIdentityReport {
    pub fn consistent(&self) -> bool {
        self.box_consistent && self.closed_form_consistent.unwrap_or(true)
    }
}

pub fn mean_identity_check(
    e: &Exponents,
    theta_steps: usize,
    b: &IntegrationBox,
    steps: &[usize],
) -> Result<MeanIdentityReport, StrichartzError> {
    let (t_max, r_max) = time_radius(b)?;
    if steps.len() != 2 {
        return Err(StrichartzError::InvalidGrid("need two step counts".into()));
    }
    let kappa = special::gamma_ratio_constant(e)?;
    let j = JIntegrandPolar::new(*e, Interval::ZERO)?;
    let m = JIntegrandPolar::mass(*e)?;
    let (mean_box, mass_box) = if b.is_degenerate() {
        (Interval::ZERO, Interval::ZERO)
    } else {
        let b3 = IntegrationBox::from_bounds(&[(0.0, 1.0), b.axes()[0], b.axes()[1]])?;
        let mean = quad::riemann_enclosure(&ThetaAveraged(j), &b3, &[theta_steps, steps[0], steps[1]])?;
        (mean, quad::riemann_enclosure(&m, b, steps)?)
    };
    let kappa_mass_box = kappa * mass_box;
    let box_consistent = mean_box.intersects(&kappa_mass_box);

    let mut report = MeanIdentityReport {
        dim: e.d(),
        theta_steps,
        steps: steps.to_vec(),
        kappa,
        mean_box,
        mass_box,
        kappa_mass_box,
        box_consistent,
        tail: None,
        mean_full: None,
        kappa_mass_full: None,
        closed_form: None,
        closed_form_consistent: None,
    };
    if t_max >= 1.0 && r_max >= 1.0 {
        let tail = quad::tail_bound_j(e, t_max, r_max)?;
        let widen = |v: Interval| Interval::new(v.lo(), crate::interval::round::add_up(v.hi(), tail)).expect("ordered");
        // The θ-mean of the tail is bounded by the same tail.
        let mean_full = widen(mean_box);
        let kappa_mass_full = kappa * widen(mass_box);
        let closed = kappa * mass_closed_form(e)?;
        report.tail = Some(tail);
        report.mean_full = Some(mean_full);
        report.kappa_mass_full = Some(kappa_mass_full);
        report.closed_form = Some(closed);
        report.closed_form_consistent = Some(mean_full.intersects(&closed) && kappa_mass_full.intersects(&closed));
    }
    Ok(report)
}

/// Midpoint-rule grid on `[-t_max, t_max] x [0, x_max]` in (t, |x|).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FloatGrid {
    pub t_max: f64,
    pub x_max: f64,
    pub nt: usize,
    pub nx: usize,
}

impl Default for FloatGrid {
    fn default() -> Self {
        FloatGrid {
            t_max: 200.0,
            x_max: 60.0,
            nt: 8000,
            nx: 1200,
        }
    }
}

/// Float-mode values of J(θ) from three formulas for `f = e^{-|ξ|²}`.
#[derive(Debug, Clone, Serialize)]
pub struct FloatOracle {
    pub dim: u32,
    pub theta: f64,
    pub grid: FloatGrid,
    /// `∫|Re e^{iθ} Ef|^q` with Ef from the closed-form Gaussian extension.
    pub closed_form: f64,
    /// `π^{dq/2} ∫ (1+t²)^{-dq/2} e^{-q|x|²/(4(1+t²))} |cos(θ + t|x|²/(4(1+t²)))|^q`.
    pub cartesian_form: f64,
    /// The polar integrand, over the same t range and r in [0, x_max].
    pub polar_form: f64,
}

/// `|S^{d-1}|`, the area of the unit sphere in ℝ^d.
fn sphere_area(d: u32) -> f64 {
    let g = special::gamma_half_integer(Rational::new(d as i64, 2))
        .expect("d >= 1")
        .mid();
    2.0 * std::f64::consts::PI.powf(d as f64 / 2.0) / g
}

/// `|Re e^{iθ} Ef(t, x)|^q` for the standard Gaussian with `|x| = radius`.
pub fn cartesian_integrand_float(e: &Exponents, theta: f64, t: f64, radius: f64) -> f64 {
    let d = e.d() as usize;
    let mut x = vec![0.0; d];
    x[0] = radius;
    let g = GeneralizedGaussian::standard(d);
    let ef = symmetry::extension_of_gaussian(&g, Sign::Plus, t, &x).expect("Re a = 1");
    (Complex64::from_polar(1.0, theta) * ef).re.abs().powf(q_f64(e))
}

fn q_f64(e: &Exponents) -> f64 {
    *e.q().numer() as f64 / *e.q().denom() as f64
}

/// Non-rigorous midpoint sums of the three J(θ) formulas, using radial
/// symmetry in x. Substituting |x| = 2r√(1+t²) turns the Cartesian form
/// into 2^d times the polar form with phase tr² in place of tr²/4, so the
/// two forms do not agree exactly. The closed form uses the exact
/// |Ef|, whose amplitude decays like (1+t²)^{-d/4} and whose phase carries
/// an extra (d/2)·arctan t; it is the independent check.
pub fn gaussian_extension_norm_float(
    e: &Exponents,
    theta: f64,
    grid: FloatGrid,
) -> Result<FloatOracle, StrichartzError> {
    if grid.nt == 0 || grid.nx == 0 || !(grid.t_max > 0.0 && grid.x_max > 0.0) {
        return Err(StrichartzError::InvalidGrid(format!("{grid:?}")));
    }
    let d = e.d();
    let df = d as f64;
    let q = q_f64(e);
    let pi = std::f64::consts::PI;
    let area = sphere_area(d);
    let c_d = 2.0 * pi.powf(df * (1.0 + q) / 2.0) / special::gamma_half_integer(Rational::new(d as i64, 2))?.mid();
    let ht = 2.0 * grid.t_max / grid.nt as f64;
    let hx = grid.x_max / grid.nx as f64;
    let (mut closed, mut cart, mut polar) = (0.0, 0.0, 0.0);
    for i in 0..grid.nt {
        let t = -grid.t_max + (i as f64 + 0.5) * ht;
        let s = 1.0 + t * t;
        let (mut rc, mut rp, mut rr) = (0.0, 0.0, 0.0);
        for j in 0..grid.nx {
            let r = (j as f64 + 0.5) * hx;
            let shell = area * r.powi(d as i32 - 1);
            rc += shell * cartesian_integrand_float(e, theta, t, r);
            let arg = theta + t * r * r / (4.0 * s);
            rp += shell
                * pi.powf(df * q / 2.0)
                * s.powf(-df * q / 2.0)
                * (-q * r * r / (4.0 * s)).exp()
                * arg.cos().abs().powf(q);
            let arg = theta + t * r * r / 4.0;
            rr += c_d
                * s.powf(df * (1.0 - q) / 2.0)
                * r.powi(d as i32 - 1)
                * (-q * r * r).exp()
                * arg.cos().abs().powf(q);
        }
        closed += rc;
        cart += rp;
        polar += rr;
    }
    let cell = ht * hx;
    Ok(FloatOracle {
        dim: d,
        theta,
        grid,
        closed_form: closed * cell,
        cartesian_form: cart * cell,
        polar_form: polar * cell,
    })
}

/// Tensor midpoint grid `[-t_max, t_max] x [-x_max, x_max]^d`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EquidistributionGrid {
    pub t_max: f64,
    pub x_max: f64,
    pub nt: usize,
    pub nx: usize,
}

impl Default for EquidistributionGrid {
    fn default() -> Self {
        EquidistributionGrid {
            t_max: 4.0,
            x_max: 12.0,
            nt: 8000,
            nx: 800,
        }
    }
}

/// `|∫|Im e^{i(-t|η|² + x·η)} Eg|^q - (1/2π)∫₀^{2π}∫|Im e^{iθ} Eg|^q|` on a
/// truncated grid. The θ-average is `mean|sin|^q · ∫|Eg|^q`, with the mean
/// taken by a fine midpoint rule so that non-integer q is covered.
pub fn equidistribution_gap(
    g: &GeneralizedGaussian,
    eta: &[f64],
    e: &Exponents,
    grid: EquidistributionGrid,
) -> Result<f64, StrichartzError> {
    let (lhs, rhs) = equidistribution_terms(g, eta, e, grid)?;
    Ok((lhs - rhs).abs())
}

/// The two sides compared by [`equidistribution_gap`].
pub fn equidistribution_terms(
    g: &GeneralizedGaussian,
    eta: &[f64],
    e: &Exponents,
    grid: EquidistributionGrid,
) -> Result<(f64, f64), StrichartzError> {
    let d = g.dim();
    if eta.len() != d || e.d() as usize != d {
        return Err(StrichartzError::InvalidGrid(format!(
            "η has {} components, g has dimension {d}",
            eta.len()
        )));
    }
    if grid.nt == 0 || grid.nx == 0 {
        return Err(StrichartzError::InvalidGrid(format!("{grid:?}")));
    }
    let q = q_f64(e);
    let eta2: f64 = eta.iter().map(|v| v * v).sum();
    let ht = 2.0 * grid.t_max / grid.nt as f64;
    let hx = 2.0 * grid.x_max / grid.nx as f64;
    let total_x = grid.nx.pow(d as u32);
    let (mut lhs, mut mass) = (0.0, 0.0);
    let mut x = vec![0.0; d];
    for i in 0..grid.nt {
        let t = -grid.t_max + (i as f64 + 0.5) * ht;
        for flat in 0..total_x {
            let mut rem = flat;
            for xj in x.iter_mut() {
                *xj = -grid.x_max + ((rem % grid.nx) as f64 + 0.5) * hx;
                rem /= grid.nx;
            }
            let ef = symmetry::extension_of_gaussian(g, Sign::Plus, t, &x)?;
            let phase = -t * eta2 + x.iter().zip(eta).map(|(a, b)| a * b).sum::<f64>();
            lhs += (Complex64::from_polar(1.0, phase) * ef).im.abs().powf(q);
            mass += ef.norm().powf(q);
        }
    }
    let cell = ht * hx.powi(d as i32);
    let n_theta = 1 << 16;
    let mean_sin: f64 = (0..n_theta)
        .map(|k| ((k as f64 + 0.5) * std::f64::consts::PI / n_theta as f64).sin().powf(q))
        .sum::<f64>()
        / n_theta as f64;
    Ok((lhs * cell, mean_sin * mass * cell))
}

/// `(| |Σa_j|^q - Σ|a_j|^q |, sup_{j≠j'} |a_j||a_{j'}|^{q-1})`.
pub fn superadditivity_defect(values: &[Complex64], q: f64) -> Result<(f64, f64), StrichartzError> {
    if values.len() < 2 || !(q > 2.0) {
        return Err(StrichartzError::InvalidGrid(format!(
            "need n >= 2 and q > 2, got n = {}, q = {q}",
            values.len()
        )));
    }
    let pow = |x: f64| if q.fract() == 0.0 { x.powi(q as i32) } else { x.powf(q) };
    let sum: Complex64 = values.iter().sum();
    let defect = (pow(sum.norm()) - values.iter().map(|a| pow(a.norm())).sum::<f64>()).abs();
    let mut pairsup: f64 = 0.0;
    for (j, a) in values.iter().enumerate() {
        for (k, b) in values.iter().enumerate() {
            if j != k {
                pairsup = pairsup.max(a.norm() * pow(b.norm()) / b.norm().max(f64::MIN_POSITIVE));
            }
        }
    }
    Ok((defect, pairsup))
}

#[derive(Debug, Clone, Serialize)]
pub struct SuperadditivityReport {
    pub seed: u64,
    pub samples: usize,
    pub q: f64,
    /// `(n, max defect/pairsup)` for n = 2..=max_n.
    pub max_ratio_by_n: Vec<(usize, f64)>,
    pub max_ratio: f64,
}

/// Randomized search for the largest `defect / pairsup` over complex
/// vectors of length `2..=max_n` with moduli in [0, 1].
pub fn superadditivity_search(
    seed: u64,
    samples: usize,
    max_n: usize,
    q: f64,
) -> Result<SuperadditivityReport, StrichartzError> {
    if max_n < 2 {
        return Err(StrichartzError::InvalidGrid("max_n must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = vec![0.0f64; max_n + 1];
    for k in 0..samples {
        let n = 2 + k % (max_n - 1);
        let values: Vec<Complex64> = (0..n)
            .map(|_| {
                // Spread moduli over several decades so dominated terms occur.
                let r = 10f64.powf(rng.gen_range(-3.0..0.0));
                Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
            })
            .collect();
        let (defect, pairsup) = superadditivity_defect(&values, q)?;
        if pairsup > 0.0 {
            best[n] = best[n].max(defect / pairsup);
        }
    }
    let max_ratio_by_n: Vec<(usize, f64)> = (2..=max_n).map(|n| (n, best[n])).collect();
    let max_ratio = max_ratio_by_n.iter().map(|&(_, r)| r).fold(0.0, f64::max);
    Ok(SuperadditivityReport {
        seed,
        samples,
        q,
        max_ratio_by_n,
        max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_box() -> IntegrationBox {
        IntegrationBox::time_radius(50.0, 5.0).unwrap()
    }

    #[test]
    fn grid_steps_for_reference_box() {
        assert_eq!(grid_steps(50.0, 5.0, 0.1).unwrap(), vec![1000, 50]);
        assert_eq!(grid_steps(50.0, 5.0, 500.0).unwrap(), vec![1, 1]);
        assert!(grid_steps(50.0, 5.0, 0.0).is_err());
    }

    #[test]
    fn rejects_uncertifiable_dimensions() {
        let e = Exponents::stein_tomas(3);
        assert!(j_integral(&e, Interval::ZERO, &reference_box(), &[10, 10]).is_err());
        let bad = IntegrationBox::from_bounds(&[(-1.0, 2.0), (0.0, 5.0)]).unwrap();
        assert!(j_integral(&Exponents::stein_tomas(1), Interval::ZERO, &bad, &[4, 4]).is_err());
    }

    #[test]
    fn mass_closed_forms() {
        // 4π^{7/2}/(3√6) and 3π⁶/32
        let m1 = mass_closed_form(&Exponents::stein_tomas(1)).unwrap();
        assert!((m1.mid() - 29.914_907_606_727_6).abs() < 1e-12 && m1.width() < 1e-12);
        let m2 = mass_closed_form(&Exponents::stein_tomas(2)).unwrap();
        assert!((m2.mid() - 90.130_236_897_684_8).abs() < 1e-10);
    }

    #[test]
    fn coarse_grid_is_inconclusive() {
        let e = Exponents::stein_tomas(1);
        let v = verify_separation(&e, &reference_box(), &[1, 1]).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(v.margin < 0.0);
    }

    #[test]
    fn superadditivity_hand_case() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(superadditivity_defect(&[one, one], 6.0).unwrap(), (62.0, 1.0));
        let zero = Complex64::new(0.0, 0.0);
        let (defect, _) = superadditivity_defect(&[Complex64::new(0.3, -2.0), zero, zero], 6.0).unwrap();
        assert!(defect.abs() < 1e-12);
        assert!(superadditivity_defect(&[one], 6.0).is_err());
    }

    #[test]
    fn cartesian_integrand_at_origin() {
        for d in [1, 2] {
            let e = Exponents::stein_tomas(d);
            let expect = std::f64::consts::PI.powf(d as f64 * q_f64(&e) / 2.0);
            assert!((cartesian_integrand_float(&e, 0.0, 0.0, 0.0) / expect - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn equidistribution_of_zero_is_zero() {
        let zero = GeneralizedGaussian::new(
            Complex64::new(1.0, 0.0),
            vec![Complex64::new(0.0, 0.0)],
            Complex64::new(-1e4, 0.0),
        )
        .unwrap();
        let grid = EquidistributionGrid {
            nt: 50,
            nx: 50,
            ..Default::default()
        };
        let gap = equidistribution_gap(&zero, &[3.0], &Exponents::stein_tomas(1), grid).unwrap();
        assert_eq!(gap, 0.0);
    }
}
