//! Symmetries of the paraboloid extension operators acting on generalized
//! Gaussians `ξ ↦ exp(-a|ξ|² + b·ξ + c)`, their closed-form extensions, and
//! a heuristic classifier for asymptotic orthogonality of parameter
//! sequences.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::interval::Rational;

#[derive(Debug, Error, PartialEq)]
pub enum SymmetryError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not integrable: Re(a) = {0} must be positive")]
    NotIntegrable(f64),
    #[error("branch: Re(a ∓ it) = {0} must be positive")]
    Branch(f64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Which paraboloid: `+` for τ = |ξ|², `-` for τ = -|ξ|².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn sigma(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

/// Canonical parameters of a symmetry in 𝐒±:
/// `S g(ξ) = λ^{d/p} e^{i(±t₀|λξ-ξ'|² + x₀·(λξ-ξ'))} g(λξ - ξ')`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryParams {
    pub sign: Sign,
    pub lambda: f64,
    pub t0: f64,
    pub x0: Vec<f64>,
    pub xi: Vec<f64>,
    #[serde(serialize_with = "ser_rational")]
    pub p: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl SymmetryParams {
    pub fn new(
        sign: Sign,
        lambda: f64,
        t0: f64,
        x0: Vec<f64>,
        xi: Vec<f64>,
        p: Rational,
    ) -> Result<Self, SymmetryError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(SymmetryError::InvalidParameters(format!(
                "λ = {lambda} must be positive"
            )));
        }
        if x0.len() != xi.len() || x0.is_empty() {
            return Err(SymmetryError::DimensionMismatch(format!(
                "x₀ has {} components, ξ' has {}",
                x0.len(),
                xi.len()
            )));
        }
        if p <= Rational::from_integer(0) {
            return Err(SymmetryError::InvalidParameters(format!("p = {p} must be positive")));
        }
        Ok(SymmetryParams {
            sign,
            lambda,
            t0,
            x0,
            xi,
            p,
        })
    }

    pub fn identity(sign: Sign, d: usize, p: Rational) -> Self {
        SymmetryParams {
            sign,
            lambda: 1.0,
            t0: 0.0,
            x0: vec![0.0; d],
            xi: vec![0.0; d],
            p,
        }
    }

    pub fn scaling(sign: Sign, d: usize, p: Rational, lambda: f64) -> Self {
        SymmetryParams {
            lambda,
            ..Self::identity(sign, d, p)
        }
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    fn d_over_p(&self) -> f64 {
        self.dim() as f64 * (*self.p.denom() as f64) / (*self.p.numer() as f64)
    }

    /// Parameters of S⁻¹, so that `compose(S, S.inverse())` is the identity
    /// up to a unit phase.
    pub fn inverse(&self) -> Self {
        let s = self.sign.sigma();
        let l = self.lambda;
        SymmetryParams {
            sign: self.sign,
            lambda: 1.0 / l,
            t0: -self.t0 * l * l,
            x0: self
                .x0
                .iter()
                .zip(&self.xi)
                .map(|(x, k)| -l * x + 2.0 * s * l * self.t0 * k)
                .collect(),
            xi: self.xi.iter().map(|k| -k / l).collect(),
            p: self.p,
        }
    }

    /// Evaluates `T F(t, x)` for the 𝐓± element matching this symmetry:
    /// `λ^{d/p-d} e^{i(±λ⁻²t|ξ'|² + λ⁻¹x·ξ')} F(λ⁻²t + t₀, λ⁻¹x + x₀ ± 2λ⁻²tξ')`.
    /// At the scaling-critical `q`, `d/p - d = -(d+2)/q`.
    pub fn t_action<F>(&self, f: F, t: f64, x: &[f64]) -> Complex64
    where
        F: Fn(f64, &[f64]) -> Complex64,
    {
        let s = self.sign.sigma();
        let l = self.lambda;
        let amp = l.powf(self.d_over_p() - self.dim() as f64);
        let phase = s * t * dot(&self.xi, &self.xi) / (l * l) + dot(x, &self.xi) / l;
        let tt = t / (l * l) + self.t0;
        let xx: Vec<f64> = x
            .iter()
            .zip(&self.x0)
            .zip(&self.xi)
            .map(|((xj, x0), k)| xj / l + x0 + 2.0 * s * t * k / (l * l))
            .collect();
        Complex64::from_polar(amp, phase) * f(tt, &xx)
    }
}

/// `ξ ↦ exp(-a|ξ|² + b·ξ + c)` with `Re a > 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedGaussian {
    #[serde(serialize_with = "ser_complex")]
    pub a: Complex64,
    #[serde(serialize_with = "ser_complex_vec")]
    pub b: Vec<Complex64>,
    #[serde(serialize_with = "ser_complex")]
    pub c: Complex64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

impl GeneralizedGaussian {
    pub fn new(a: Complex64, b: Vec<Complex64>, c: Complex64) -> Result<Self, SymmetryError> {
        if !(a.re > 0.0) {
            return Err(SymmetryError::NotIntegrable(a.re));
        }
        if b.is_empty() {
            return Err(SymmetryError::DimensionMismatch("b is empty".into()));
        }
        Ok(GeneralizedGaussian { a, b, c })
    }

    /// `e^{-|ξ|²}` on ℝ^d.
    pub fn standard(d: usize) -> Self {
        GeneralizedGaussian {
            a: Complex64::new(1.0, 0.0),
            b: vec![Complex64::new(0.0, 0.0); d],
            c: Complex64::new(0.0, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        let bx: Complex64 = self.b.iter().zip(xi).map(|(b, x)| b * x).sum();
        (-self.a * dot(xi, xi) + bx + self.c).exp()
    }

    /// `‖g‖_p^p` by trapezoid quadrature. `|g|^p` factors over
    /// coordinates, so a one-dimensional rule per coordinate suffices.
    pub fn lp_norm_pow_numeric(&self, p: f64, points: usize) -> f64 {
        let ar = self.a.re;
        let mut total = (p * self.c.re).exp();
        for bj in &self.b {
            let centre = bj.re / (2.0 * ar);
            let half = 12.0 / (p * ar).sqrt();
            let h = 2.0 * half / points as f64;
            let mut s = 0.0;
            for k in 0..=points {
                let x = centre - half + h * k as f64;
                let w = if k == 0 || k == points { 0.5 } else { 1.0 };
                s += w * (p * (-ar * x * x + bj.re * x)).exp();
            }
            total *= s * h;
        }
        total
    }
}

/// `S g` in closed form: with `A = a ∓ it₀`, `B = b + ix₀`,
/// `a' = λ²A`, `b' = λB + 2λAξ'`, `c' = c - A|ξ'|² - B·ξ' + (d/p) ln λ`.
pub fn apply(s: &SymmetryParams, g: &GeneralizedGaussian) -> Result<GeneralizedGaussian, SymmetryError> {
    if s.dim() != g.dim() {
        return Err(SymmetryError::DimensionMismatch(format!(
            "symmetry d = {}, gaussian d = {}",
            s.dim(),
            g.dim()
        )));
    }
    let i = Complex64::i();
    let l = s.lambda;
    let big_a = g.a - i * s.sign.sigma() * s.t0;
    let big_b: Vec<Complex64> = g.b.iter().zip(&s.x0).map(|(b, x)| b + i * x).collect();
    let a = big_a * l * l;
    let b = big_b
        .iter()
        .zip(&s.xi)
        .map(|(bb, k)| bb * l + big_a * (2.0 * l * k))
        .collect();
    let bxi: Complex64 = big_b.iter().zip(&s.xi).map(|(bb, k)| bb * k).sum();
    let c = g.c - big_a * dot(&s.xi, &s.xi) - bxi + s.d_over_p() * l.ln();
    GeneralizedGaussian::new(a, b, c)
}

/// `E± g(t, x) = ∫ e^{i(±t|ξ|² + x·ξ)} g(ξ) dξ = (π/α)^{d/2} exp(β·β/(4α) + c)`
/// with `α = a ∓ it`, `β = b + ix`, on the principal branch.
pub fn extension_of_gaussian(
    g: &GeneralizedGaussian,
    sign: Sign,
    t: f64,
    x: &[f64],
) -> Result<Complex64, SymmetryError> {
    if x.len() != g.dim() {
        return Err(SymmetryError::DimensionMismatch(format!(
            "x has {} components, d = {}",
            x.len(),
            g.dim()
        )));
    }
    let alpha = g.a - Complex64::i() * sign.sigma() * t;
    if !(alpha.re > 0.0) {
        return Err(SymmetryError::Branch(alpha.re));
    }
    let beta2: Complex64 = g.b.iter().zip(x).map(|(b, xj)| (b + Complex64::i() * xj).powi(2)).sum();
    let root = (std::f64::consts::PI / alpha).sqrt();
    Ok(root.powi(g.dim() as i32) * (beta2 / (4.0 * alpha) + g.c).exp())
}

/// Brute-force trapezoid evaluation of the defining integral of `E± g`,
/// one coordinate at a time.
pub fn extension_numeric(g: &GeneralizedGaussian, sign: Sign, t: f64, x: &[f64], points: usize) -> Complex64 {
    let alpha = g.a - Complex64::i() * sign.sigma() * t;
    let ar = g.a.re;
    let mut total = g.c.exp();
    for (bj, xj) in g.b.iter().zip(x) {
        let beta = bj + Complex64::i() * xj;
        let centre = bj.re / (2.0 * ar);
        let half = 14.0 / ar.sqrt();
        let h = 2.0 * half / points as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..=points {
            let u = centre - half + h * k as f64;
            let w = if k == 0 || k == points { 0.5 } else { 1.0 };
            s += w * (-alpha * u * u + beta * u).exp();
        }
        total *= s * h;
    }
    total
}

/// `g̃(ξ) = conj(g(-ξ))`: `(a, b, c) ↦ (ā, -b̄, c̄)`.
pub fn reflect(g: &GeneralizedGaussian) -> GeneralizedGaussian {
    GeneralizedGaussian {
        a: g.a.conj(),
        b: g.b.iter().map(|b| -b.conj()).collect(),
        c: g.c.conj(),
    }
}

/// `S₁ ∘ S₂ = phase · S` with `S` canonical and `|phase| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Composed {
    pub params: SymmetryParams,
    #[serde(serialize_with = "ser_complex")]
    pub phase: Complex64,
}

pub fn compose(s1: &SymmetryParams, s2: &SymmetryParams) -> Result<Composed, SymmetryError> {
    if s1.sign != s2.sign {
        return Err(SymmetryError::InvalidParameters(
            "compose needs symmetries of the same sign".into(),
        ));
    }
    if s1.dim() != s2.dim() || s1.p != s2.p {
        return Err(SymmetryError::DimensionMismatch("compose needs equal d and p".into()));
    }
    let s = s1.sign.sigma();
    let l2 = s2.lambda;
    let params = SymmetryParams {
        sign: s1.sign,
        lambda: s1.lambda * l2,
        t0: s2.t0 + s1.t0 / (l2 * l2),
        x0: s2
            .x0
            .iter()
            .zip(&s1.x0)
            .zip(&s2.xi)
            .map(|((x2, x1), k2)| x2 + x1 / l2 + 2.0 * s * s1.t0 * k2 / (l2 * l2))
            .collect(),
        xi: s1.xi.iter().zip(&s2.xi).map(|(k1, k2)| l2 * k1 + k2).collect(),
        p: s1.p,
    };
    let angle = s * s1.t0 * dot(&s2.xi, &s2.xi) / (l2 * l2) + dot(&s1.x0, &s2.xi) / l2;
    Ok(Composed {
        params,
        phase: Complex64::from_polar(1.0, angle),
    })
}

/// `U⁻¹T` for `T ∈ 𝐓₊` from `S = (λ, t, x, ξ)` and `U ∈ 𝐓₋` from
/// `R = (κ, s, y, η)`, written as
/// `U⁻¹T F(t,x) = e^{iθ} e^{-2i(t|η|² + x·η)} V F(t,x)` with `V ∈ 𝐓₊`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossPhase {
    pub theta: f64,
    /// Parameters of V: scaling 1/r, frequency ξ + η/r,
    /// translation (t - r²s, x - ry - 2r²s(ξ + η/r)).
    pub params: SymmetryParams,
    pub r: f64,
}

pub fn cross_phase(s: &SymmetryParams, r: &SymmetryParams) -> Result<CrossPhase, SymmetryError> {
    if s.sign != Sign::Plus || r.sign != Sign::Minus {
        return Err(SymmetryError::InvalidParameters(
            "cross_phase needs S in 𝐒₊ and R in 𝐒₋".into(),
        ));
    }
    if s.dim() != r.dim() {
        return Err(SymmetryError::DimensionMismatch("S and R differ in dimension".into()));
    }
    let ratio = r.lambda / s.lambda;
    let (xi, eta, y, sr) = (&s.xi, &r.xi, &r.x0, r.t0);
    let theta = -ratio * ratio * dot(xi, xi) * sr - ratio * dot(y, xi) - 2.0 * ratio * sr * dot(eta, xi)
        + sr * dot(eta, eta)
        + dot(y, eta);
    let xi2: Vec<f64> = xi.iter().zip(eta).map(|(k, e)| k + e / ratio).collect();
    let t0 = s.t0 - ratio * ratio * sr;
    let x0 =
        s.x0.iter()
            .zip(y)
            .zip(&xi2)
            .map(|((xn, yn), k)| xn - ratio * yn - 2.0 * ratio * ratio * sr * k)
            .collect();
    let params = SymmetryParams {
        sign: Sign::Plus,
        lambda: 1.0 / ratio,
        t0,
        x0,
        xi: xi2,
        p: s.p,
    };
    Ok(CrossPhase {
        theta,
        params,
        r: ratio,
    })
}

/// Evaluates `U⁻¹ H(t, x)` for the 𝐓₋ element `U` built from `r`:
/// `κ^{d-d/p} e^{i(-(t-s)|η|² - x·η + y·η)} H(κ²(t-s), κ(x - y + 2(t-s)η))`.
pub fn t_minus_inverse_action<H>(r: &SymmetryParams, h: H, t: f64, x: &[f64]) -> Complex64
where
    H: Fn(f64, &[f64]) -> Complex64,
{
    let k = r.lambda;
    let dt = t - r.t0;
    let amp = k.powf(r.dim() as f64 - r.d_over_p());
    let phase = -dt * dot(&r.xi, &r.xi) - dot(x, &r.xi) + dot(&r.x0, &r.xi);
    let xx: Vec<f64> = x
        .iter()
        .zip(&r.x0)
        .zip(&r.xi)
        .map(|((xj, yj), ej)| k * (xj - yj + 2.0 * dt * ej))
        .collect();
    Complex64::from_polar(amp, phase) * h(k * k * dt, &xx)
}

/// Parameters sampled along two sequences of symmetries.
#[derive(Debug, Clone)]
pub struct ParamSequencePair {
    pub first: Vec<SymmetryParams>,
    pub second: Vec<SymmetryParams>,
}

impl ParamSequencePair {
    pub fn new(first: Vec<SymmetryParams>, second: Vec<SymmetryParams>) -> Result<Self, SymmetryError> {
        if first.len() != second.len() || first.len() < 3 {
            return Err(SymmetryError::InvalidParameters(format!(
                "sequences need equal length >= 3, got {} and {}",
                first.len(),
                second.len()
            )));
        }
        let d = first[0].dim();
        if first.iter().chain(&second).any(|s| s.dim() != d) {
            return Err(SymmetryError::DimensionMismatch("mixed dimensions in sequences".into()));
        }
        Ok(ParamSequencePair { first, second })
    }

    pub fn horizon(&self) -> usize {
        self.first.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrthogonalityCondition {
    ScaleRatio,
    Frequency,
    Translation,
    None,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub condition: OrthogonalityCondition,
    /// Witness values at the last sample, in condition order.
    pub witnesses: [f64; 3],
    /// Always true: finite samples cannot decide a limit.
    pub heuristic: bool,
}

fn witnesses(a: &SymmetryParams, b: &SymmetryParams) -> [f64; 3] {
    let rho = a.lambda / b.lambda;
    if a.sign != b.sign {
        // (λ,t,x,ξ) against (κ,s,y,η)
        let freq: Vec<f64> = b.xi.iter().zip(&a.xi).map(|(e, k)| rho * e + k).collect();
        let trans: Vec<f64> = (0..a.dim())
            .map(|j| a.x0[j] - rho * b.x0[j] - 2.0 * rho * b.t0 * (b.xi[j] + rho * a.xi[j]))
            .collect();
        [rho, norm(&freq), (a.t0 - rho * rho * b.t0).abs() + norm(&trans)]
    } else {
        let freq: Vec<f64> = b.xi.iter().zip(&a.xi).map(|(k2, k)| rho * k2 - k).collect();
        let trans: Vec<f64> = (0..a.dim())
            .map(|j| a.x0[j] - rho * b.x0[j] + 2.0 * rho * b.t0 * (b.xi[j] - rho * a.xi[j]))
            .collect();
        [rho, norm(&freq), (a.t0 - rho * rho * b.t0).abs() + norm(&trans)]
    }
}

/// Reports the first condition whose witness is past `threshold` (or below
/// `1/threshold` for the scale ratio) at the last sample and moves
/// monotonically that way over the last three samples.
pub fn classify_orthogonality(pair: &ParamSequencePair, threshold: f64) -> Result<OrthogonalityReport, SymmetryError> {
    if !(threshold > 1.0) {
        return Err(SymmetryError::InvalidParameters(format!(
            "threshold {threshold} must exceed 1"
        )));
    }
    let n = pair.horizon();
    let w: Vec<[f64; 3]> = (n - 3..n).map(|k| witnesses(&pair.first[k], &pair.second[k])).collect();
    let rising = |c: usize| w[0][c] <= w[1][c] && w[1][c] <= w[2][c] && w[0][c] < w[2][c];
    let falling = |c: usize| w[0][c] >= w[1][c] && w[1][c] >= w[2][c] && w[0][c] > w[2][c];
    let last = w[2];
    let condition = if (last[0] > threshold && rising(0)) || (last[0] < 1.0 / threshold && falling(0)) {
        OrthogonalityCondition::ScaleRatio
    } else if last[1] > threshold && rising(1) {
        OrthogonalityCondition::Frequency
    } else if last[2] > threshold && rising(2) {
        OrthogonalityCondition::Translation
    } else {
        OrthogonalityCondition::None
    };
    Ok(OrthogonalityReport {
        condition,
        witnesses: last,
        heuristic: true,
    })
}

/// Outcome of one randomized property.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

fn random_vec(rng: &mut ChaCha8Rng, d: usize, scale: f64) -> Vec<f64> {
    (0..d).map(|_| rng.gen_range(-scale..scale)).collect()
}

pub fn random_params(rng: &mut ChaCha8Rng, sign: Sign, d: usize, p: Rational) -> SymmetryParams {
    SymmetryParams {
        sign,
        lambda: rng.gen_range(0.5..2.0),
        t0: rng.gen_range(-1.0..1.0),
        x0: random_vec(rng, d, 1.0),
        xi: random_vec(rng, d, 1.0),
        p,
    }
}

pub fn random_gaussian(rng: &mut ChaCha8Rng, d: usize) -> GeneralizedGaussian {
    let a = Complex64::new(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
    let b = (0..d)
        .map(|_| Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)))
        .collect();
    let c = Complex64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-3.0..3.0));
    GeneralizedGaussian { a, b, c }
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

struct Tracker {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    max_error: f64,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Tracker {
            name,
            tolerance,
            cases: 0,
            max_error: 0.0,
        }
    }

    fn case(&mut self, errors: impl IntoIterator<Item = f64>) {
        self.cases += 1;
        for e in errors {
            // NaN counts as a failure.
            self.max_error = if e.is_nan() {
                f64::INFINITY
            } else {
                self.max_error.max(e)
            };
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name.into(),
            cases: self.cases,
            max_error: self.max_error,
            tolerance: self.tolerance,
            passed: self.cases > 0 && self.max_error < self.tolerance,
        }
    }
}

/// Runs the randomized algebra suite: pointwise form of `apply`, closed
/// form against quadrature, conjugation identity, composition and its group
/// laws, intertwining `E∘S = T∘E`, L^p isometry, and the cross-phase
/// formula. Errors are relative to `max(1, |reference|)`.
pub fn run_property_suite(seed: u64, cases: usize) -> Result<SuiteReport, SymmetryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut apply_t = Tracker::new("apply_pointwise", 1e-12);
    let mut quad_t = Tracker::new("extension_vs_quadrature", 1e-6);
    let mut conj_t = Tracker::new("conjugation_identity", 1e-12);
    let mut comp_t = Tracker::new("composition", 1e-12);
    let mut assoc_t = Tracker::new("associativity", 1e-12);
    let mut inv_t = Tracker::new("inverse", 1e-12);
    let mut inter_t = Tracker::new("intertwining", 1e-10);
    let mut iso_t = Tracker::new("isometry", 1e-6);
    let mut cross_t = Tracker::new("cross_phase", 1e-10);

    for case in 0..cases {
        let d = 1 + case % 2;
        let p = Rational::from_integer(2);
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let s = random_params(&mut rng, sign, d, p);
        let s2 = random_params(&mut rng, sign, d, p);
        let s3 = random_params(&mut rng, sign, d, p);
        let g = random_gaussian(&mut rng, d);
        let sg = apply(&s, &g)?;

        let dp = d as f64 / 2.0;
        apply_t.case((0..100).map(|_| {
            let xi = random_vec(&mut rng, d, 2.0);
            let eta: Vec<f64> = xi.iter().zip(&s.xi).map(|(x, k)| s.lambda * x - k).collect();
            let phase = s.sign.sigma() * s.t0 * dot(&eta, &eta) + dot(&s.x0, &eta);
            let direct = s.lambda.powf(dp) * Complex64::from_polar(1.0, phase) * g.eval(&eta);
            rel_err(sg.eval(&xi), direct)
        }));

        if case < 20 {
            let t = rng.gen_range(-2.0..2.0);
            let x = random_vec(&mut rng, d, 2.0);
            let closed = extension_of_gaussian(&g, sign, t, &x)?;
            quad_t.case([rel_err(extension_numeric(&g, sign, t, &x, 4000), closed)]);
        }

        let gt = reflect(&g);
        let mut errs = Vec::with_capacity(100);
        for _ in 0..100 {
            let t = rng.gen_range(-3.0..3.0);
            let x = random_vec(&mut rng, d, 3.0);
            let lhs = extension_of_gaussian(&g, Sign::Minus, t, &x)?;
            let rhs = extension_of_gaussian(&gt, Sign::Plus, t, &x)?.conj();
            errs.push(rel_err(lhs, rhs));
        }
        conj_t.case(errs);

        let c12 = compose(&s, &s2)?;
        let via_c = apply(&c12.params, &g)?;
        let nested = apply(&s, &apply(&s2, &g)?)?;
        comp_t.case((0..100).map(|_| {
            let xi = random_vec(&mut rng, d, 2.0);
            rel_err(c12.phase * via_c.eval(&xi), nested.eval(&xi))
        }));

        let left = compose(&compose(&s, &s2)?.params, &s3)?;
        let left_phase = compose(&s, &s2)?.phase * left.phase;
        let right_inner = compose(&s2, &s3)?;
        let right = compose(&s, &right_inner.params)?;
        let right_phase = right_inner.phase * right.phase;
        let (gl, gr) = (apply(&left.params, &g)?, apply(&right.params, &g)?);
        assoc_t.case((0..20).map(|_| {
            let xi = random_vec(&mut rng, d, 2.0);
            rel_err(left_phase * gl.eval(&xi), right_phase * gr.eval(&xi))
        }));

        // S∘S⁻¹ has identity parameters and a unit phase.
        let id = compose(&s, &s.inverse())?;
        let back = apply(&s, &apply(&s.inverse(), &g)?)?;
        let id_params = SymmetryParams::identity(sign, d, p);
        let param_err = (id.params.lambda - 1.0).abs()
            + id.params.t0.abs()
            + norm(&id.params.x0)
            + norm(&id.params.xi)
            + (id.phase.norm() - 1.0).abs();
        let gi = apply(&id_params, &g)?;
        inv_t.case(
            (0..20)
                .map(|_| {
                    let xi = random_vec(&mut rng, d, 2.0);
                    rel_err(back.eval(&xi), id.phase * gi.eval(&xi))
                })
                .chain([param_err]),
        );

        let mut errs = Vec::with_capacity(100);
        for _ in 0..100 {
            let t = rng.gen_range(-3.0..3.0);
            let x = random_vec(&mut rng, d, 3.0);
            let lhs = extension_of_gaussian(&sg, sign, t, &x)?;
            let rhs = s.t_action(
                |tt, xx| extension_of_gaussian(&g, sign, tt, xx).expect("Re a > 0"),
                t,
                &x,
            );
            errs.push(rel_err(lhs, rhs));
        }
        inter_t.case(errs);

        let lp = 2.0;
        let (ns, ng) = (sg.lp_norm_pow_numeric(lp, 4000), g.lp_norm_pow_numeric(lp, 4000));
        iso_t.case([(ns.powf(1.0 / lp) - ng.powf(1.0 / lp)).abs()]);

        let sp = random_params(&mut rng, Sign::Plus, d, p);
        let rm = random_params(&mut rng, Sign::Minus, d, p);
        let cp = cross_phase(&sp, &rm)?;
        let big_f = |tt: f64, xx: &[f64]| extension_of_gaussian(&g, Sign::Plus, tt, xx).expect("Re a > 0");
        let mut errs = Vec::with_capacity(50);
        for _ in 0..50 {
            let t = rng.gen_range(-1.0..1.0);
            let x = random_vec(&mut rng, d, 1.0);
            let direct = t_minus_inverse_action(&rm, |tt, xx| sp.t_action(big_f, tt, xx), t, &x);
            let mult = Complex64::from_polar(1.0, cp.theta - 2.0 * (t * dot(&rm.xi, &rm.xi) + dot(&x, &rm.xi)));
            let formula = mult * cp.params.t_action(big_f, t, &x);
            errs.push(rel_err(formula, direct));
        }
        cross_t.case(errs);
    }

    Ok(SuiteReport {
        seed,
        properties: vec![
            apply_t.finish(),
            quad_t.finish(),
            conj_t.finish(),
            comp_t.finish(),
            assoc_t.finish(),
            inv_t.finish(),
            inter_t.finish(),
            iso_t.finish(),
            cross_t.finish(),
        ],
    })
}
