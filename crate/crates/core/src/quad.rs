//! Rigorous integration over boxes: uniform Riemann enclosures, adaptive
//! bisection, and analytic tail bounds for the polar J integrals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::interval::{Interval, IntervalError, Rational};
use crate::special::{self, Exponents, SpecialError};

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("DomainError on sub-box {}: {source}", fmt_cell(cell))]
    Domain { cell: Vec<Interval>, source: IntervalError },
    #[error("InvalidBox: {0}")]
    InvalidBox(String),
    #[error("InvalidSteps: {0}")]
    InvalidSteps(String),
    #[error("TargetNotReached: best enclosure {achieved} (width {})", achieved.width())]
    TargetNotReached { achieved: Interval },
    #[error("DivergentEnvelope: {0}")]
    DivergentEnvelope(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

fn fmt_cell(cell: &[Interval]) -> String {
    let parts: Vec<String> = cell.iter().map(|c| c.to_string()).collect();
    parts.join(" x ")
}

/// A function with an interval extension: `eval` must enclose the range of
/// the integrand over the cell.
pub trait Integrand: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, cell: &[Interval]) -> Result<Interval, IntervalError>;
    fn name(&self) -> String;
    /// Enclosures of nonnegative integrands are clipped at 0.
    fn is_nonnegative(&self) -> bool {
        false
    }
}

/// Axis-aligned box with exact binary64 endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationBox {
    axes: Vec<(f64, f64)>,
}

impl IntegrationBox {
    pub fn from_bounds(axes: &[(f64, f64)]) -> Result<Self, QuadError> {
        if axes.is_empty() {
            return Err(QuadError::InvalidBox("no axes".into()));
        }
        for &(lo, hi) in axes {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(QuadError::InvalidBox(format!("bad axis [{lo}, {hi}]")));
            }
        }
        Ok(IntegrationBox { axes: axes.to_vec() })
    }

    /// `[-t_max, t_max] x [0, r_max]`.
    pub fn time_radius(t_max: f64, r_max: f64) -> Result<Self, QuadError> {
        Self::from_bounds(&[(-t_max, t_max), (0.0, r_max)])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[(f64, f64)] {
        &self.axes
    }

    pub fn is_degenerate(&self) -> bool {
        self.axes.iter().any(|&(lo, hi)| lo == hi)
    }
}

impl Serialize for IntegrationBox {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<[f64; 2]> = self.axes.iter().map(|&(lo, hi)| [lo, hi]).collect();
        v.serialize(s)
    }
}

/// Result of integrating over a box, plus a bound on the omitted region.
#[derive(Debug, Clone, Serialize)]
pub struct QuadCertificate {
    pub integrand: String,
    #[serde(rename = "box")]
    pub domain: IntegrationBox,
    pub steps: Vec<usize>,
    pub main: Interval,
    /// Upper bound on |integral over the complement of the box|.
    pub tail: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl QuadCertificate {
    /// Enclosure of the integral over the whole domain.
    pub fn full(&self, nonnegative: bool) -> Interval {
        let lo = if nonnegative {
            self.main.lo()
        } else {
            crate::interval::round::sub_down(self.main.lo(), self.tail)
        };
        let hi = crate::interval::round::add_up(self.main.hi(), self.tail);
        Interval::new(lo, hi).expect("ordered endpoints")
    }
}

/// Enclosures of the nodes `lo + (hi - lo) i / n`, `i = 0..=n`.
fn axis_nodes(lo: f64, hi: f64, n: usize) -> Vec<Interval> {
    let a = Interval::point(lo);
    let span = Interval::point(hi) - a;
    let count = Interval::from_i128(n as i128);
    (0..=n)
        .map(|i| {
            if i == 0 {
                a
            } else if i == n {
                Interval::point(hi)
            } else {
                let frac = Interval::from_i128(i as i128).div(count).expect("n > 0");
                a + span * frac
            }
        })
        .collect()
}

fn check_shape<F: Integrand + ?Sized>(f: &F, b: &IntegrationBox, steps: &[usize]) -> Result<(), QuadError> {
    if f.dim() != b.dim() || steps.len() != b.dim() {
        return Err(QuadError::InvalidSteps(format!(
            "integrand dim {}, box dim {}, {} step counts",
            f.dim(),
            b.dim(),
            steps.len()
        )));
    }
    if steps.contains(&0) {
        return Err(QuadError::InvalidSteps("step counts must be positive".into()));
    }
    Ok(())
}

/// Σ f(cell) · vol(cell) over a uniform grid with `steps[k]` cells along
/// axis k. Rows along axis 0 are evaluated in parallel and merged in index
/// order, so the result does not depend on scheduling.
pub fn riemann_enclosure<F: Integrand + ?Sized>(
    f: &F,
    b: &IntegrationBox,
    steps: &[usize],
) -> Result<Interval, QuadError> {
    check_shape(f, b, steps)?;
    let nodes: Vec<Vec<Interval>> = b
        .axes
        .iter()
        .zip(steps)
        .map(|(&(lo, hi), &n)| axis_nodes(lo, hi, n))
        .collect();
    let cells: Vec<Vec<Interval>> = nodes
        .iter()
        .map(|ns| {
            ns.windows(2)
                .map(|w| Interval::new(w[0].lo(), w[1].hi()).expect("increasing nodes"))
                .collect()
        })
        .collect();
    let mut volume = Interval::ONE;
    for (&(lo, hi), &n) in b.axes.iter().zip(steps) {
        let width = (Interval::point(hi) - Interval::point(lo)).div(Interval::from_i128(n as i128))?;
        volume = volume * width;
    }

    let rest: Vec<usize> = steps[1..].to_vec();
    let row_sums: Vec<Result<Interval, QuadError>> = (0..steps[0])
        .into_par_iter()
        .map(|i| {
            let mut cell = vec![cells[0][i]; b.dim()];
            let mut idx = vec![0usize; rest.len()];
            let mut acc = Interval::ZERO;
            loop {
                for (k, &j) in idx.iter().enumerate() {
                    cell[k + 1] = cells[k + 1][j];
                }
                let v = f.eval(&cell).map_err(|source| QuadError::Domain {
                    cell: cell.clone(),
                    source,
                })?;
                acc = acc + v;
                // Odometer over the remaining axes, last axis fastest.
                let mut k = rest.len();
                loop {
                    if k == 0 {
                        return Ok(acc);
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < rest[k] {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        })
        .collect();

    let mut total = Interval::ZERO;
    for r in row_sums {
        total = total + r?;
    }
    let mut result = total * volume;
    if f.is_nonnegative() {
        result = result.clip_below(0.0);
    }
    Ok(result)
}

struct Leaf {
    /// Per axis, enclosures of the true lower and upper endpoints.
    bounds: Vec<(Interval, Interval)>,
    value: Interval,
    depth: u32,
    seq: u64,
}

impl Leaf {
    fn key(&self) -> f64 {
        self.value.width()
    }
}

impl PartialEq for Leaf {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Leaf {}

impl PartialOrd for Leaf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Leaf {
    fn cmp(&self, other: &Self) -> Ordering {
        // Widest first; earlier leaves win ties.
        self.key()
            .total_cmp(&other.key())
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn leaf_value<F: Integrand + ?Sized>(f: &F, bounds: &[(Interval, Interval)]) -> Result<Interval, QuadError> {
    let cell: Vec<Interval> = bounds
        .iter()
        .map(|(a, b)| Interval::new(a.lo(), b.hi()).expect("ordered leaf"))
        .collect();
    let mut vol = Interval::ONE;
    for (a, b) in bounds {
        vol = vol * (*b - *a).clip_below(0.0);
    }
    let v = f.eval(&cell).map_err(|source| QuadError::Domain {
        cell: cell.clone(),
        source,
    })?;
    let mut out = v * vol;
    if f.is_nonnegative() {
        out = out.clip_below(0.0);
    }
    Ok(out)
}

/// Hard cap on the number of leaves kept by [`bisect_refine`].
const MAX_LEAVES: usize = 1 << 22;

/// Adaptive refinement of the uniform grid `initial_steps`: the leaf with
/// the widest contribution is split in half along whichever axis narrows it
/// most, until the total width is at most `target` or no leaf below
/// `max_depth` remains. The result is intersected with the uniform-grid
/// enclosure, so it is never wider than that.
pub fn bisect_refine<F: Integrand + ?Sized>(
    f: &F,
    b: &IntegrationBox,
    initial_steps: &[usize],
    target: f64,
    max_depth: u32,
) -> Result<Interval, QuadError> {
    let uniform = riemann_enclosure(f, b, initial_steps)?;
    if uniform.width() <= target {
        return Ok(uniform);
    }
    let nodes: Vec<Vec<Interval>> = b
        .axes
        .iter()
        .zip(initial_steps)
        .map(|(&(lo, hi), &n)| axis_nodes(lo, hi, n))
        .collect();

    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let total_cells: usize = initial_steps.iter().product();
    for flat in 0..total_cells {
        let mut rem = flat;
        let mut bounds = vec![(Interval::ZERO, Interval::ZERO); b.dim()];
        for k in (0..b.dim()).rev() {
            let j = rem % initial_steps[k];
            rem /= initial_steps[k];
            bounds[k] = (nodes[k][j], nodes[k][j + 1]);
        }
        let value = leaf_value(f, &bounds)?;
        heap.push(Leaf {
            bounds,
            value,
            depth: 0,
            seq,
        });
        seq += 1;
    }

    let rigorous_sum = |heap: &BinaryHeap<Leaf>| -> Interval {
        let mut leaves: Vec<&Leaf> = heap.iter().collect();
        leaves.sort_by_key(|l| l.seq);
        let s: Interval = leaves.iter().map(|l| l.value).sum();
        if f.is_nonnegative() {
            s.clip_below(0.0)
        } else {
            s
        }
    };

    let mut approx_width: f64 = heap.iter().map(|l| l.key()).sum();
    loop {
        if approx_width <= target {
            let total = rigorous_sum(&heap);
            let best = total.intersection(&uniform).unwrap_or(total);
            if best.width() <= target {
                return Ok(best);
            }
            // Rounding in the running estimate; tighten it and keep going.
            approx_width = heap.iter().map(|l| l.key()).sum();
            if approx_width <= target {
                approx_width = best.width();
            }
        }
        let top = match heap.peek() {
            Some(l) if l.depth < max_depth && heap.len() < MAX_LEAVES => heap.pop().unwrap(),
            _ => break,
        };
        let mut best_split: Option<(f64, [Leaf; 2])> = None;
        for axis in 0..b.dim() {
            let (a, c) = top.bounds[axis];
            let m = 0.5 * a.mid() + 0.5 * c.mid();
            if !(a.hi() < m && m < c.lo()) {
                continue;
            }
            let mut left = top.bounds.clone();
            let mut right = top.bounds.clone();
            left[axis].1 = Interval::point(m);
            right[axis].0 = Interval::point(m);
            let lv = leaf_value(f, &left)?;
            let rv = leaf_value(f, &right)?;
            let w = lv.width() + rv.width();
            if best_split.as_ref().is_none_or(|(bw, _)| w < *bw) {
                let mk = |bounds, value, s| Leaf {
                    bounds,
                    value,
                    depth: top.depth + 1,
                    seq: s,
                };
                best_split = Some((w, [mk(left, lv, seq), mk(right, rv, seq + 1)]));
            }
        }
        match best_split {
            Some((w, children)) => {
                seq += 2;
                approx_width += w - top.key();
                for c in children {
                    heap.push(c);
                }
            }
            None => {
                // Cell too small to split in binary64; retire it at max depth.
                heap.push(Leaf {
                    depth: max_depth,
                    ..top
                });
            }
        }
    }
    let total = rigorous_sum(&heap);
    let best = total.intersection(&uniform).unwrap_or(total);
    if best.width() <= target {
        Ok(best)
    } else {
        Err(QuadError::TargetNotReached { achieved: best })
    }
}

/// Pieces of the tail bound for the polar J integrand over the complement
/// of `[-T, T] x [0, R]`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailBreakdown {
    /// Bound on `|t| > T`, all r.
    pub far_time: f64,
    /// Bound on `|t| <= T`, `r > R` (taken over all t).
    pub far_radius: f64,
    /// `far_time + far_radius`, a bound over the whole complement.
    pub cover: f64,
    /// Bound on the region `|t| > T` and `r > R` only. This region does not
    /// cover the complement of the box.
    pub corner_region: f64,
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Interval factors of the tail bound: (c_d, ∫_T^∞ time, ∫_ℝ time,
/// ∫_R^∞ radius, ∫_0^∞ radius).
fn tail_factors(e: &Exponents, t: f64, r: f64) -> Result<[Interval; 5], QuadError> {
    if !(t >= 1.0 && r >= 1.0 && t.is_finite() && r.is_finite()) {
        return Err(QuadError::InvalidBox(format!(
            "tail bound needs T, R >= 1, got T = {t}, R = {r}"
        )));
    }
    let d = e.d() as i64;
    let q = e.q();
    let s = e.time_exponent();
    // ∫ (1+t²)^s dt converges iff 2s < -1, i.e. d(q-1) > 1.
    let decay = -(s * ri(2)) - ri(1);
    if decay <= ri(0) {
        return Err(QuadError::DivergentEnvelope(format!(
            "d(q-1) = {} <= 1, the time envelope is not integrable",
            Rational::from_integer(d) * (q - ri(1))
        )));
    }
    let t_iv = Interval::point(t);
    let r_iv = Interval::point(r);
    let q_iv = Interval::from_rational(q);

    // (1+t²)^s <= t^{2s}, so ∫_T^∞ <= T^{2s+1}/(-2s-1).
    let far_time = t_iv.pow_real(s * ri(2) + ri(1))?.div(Interval::from_rational(decay))?;

    let whole_time = if (s * ri(2)).is_integer() {
        // √π Γ(-s-1/2) / Γ(-s)
        let num = special::gamma_half_integer(-s - Rational::new(1, 2))?;
        let den = special::gamma_half_integer(-s)?;
        crate::interval::PI.sqrt()? * num.div(den)?
    } else {
        // ∫_{|t|<=1} 1 + ∫_{|t|>1} t^{2s}
        (Interval::ONE + Interval::ONE.div(Interval::from_rational(decay))?).scale(2.0)
    };

    let gauss = (-(q_iv * r_iv.sqr())).exp();
    let r_pow = r_iv.pow_real(ri(d - 2))?;
    let denom = if d <= 2 {
        q_iv.scale(2.0)
    } else {
        let correction = Interval::from_i128(d as i128 - 2).div(r_iv.sqr().scale(2.0))?;
        let den = q_iv - correction;
        if den.lo() <= 0.0 {
            return Err(QuadError::InvalidBox(format!(
                "R = {r} too small for the radial tail bound"
            )));
        }
        den.scale(2.0)
    };
    let far_radius = (r_pow * gauss).div(denom)?;

    // ∫_0^∞ r^{d-1} e^{-q r²} dr = Γ(d/2) / (2 q^{d/2})
    let whole_radius =
        special::gamma_half_integer(Rational::new(d, 2))?.div(q_iv.pow_real(Rational::new(d, 2))?.scale(2.0))?;

    let c = special::polar_constant(e)?;
    Ok([c, far_time, whole_time, far_radius, whole_radius])
}

/// Tail bounds for the polar J integrand with `|cos|^q <= 1`.
pub fn tail_breakdown(e: &Exponents, t: f64, r: f64) -> Result<TailBreakdown, QuadError> {
    let [c, far_t, all_t, far_r, all_r] = tail_factors(e, t, r)?;
    let time_part = c * far_t.scale(2.0) * all_r;
    let radius_part = c * all_t * far_r;
    let corner = c * far_t.scale(2.0) * far_r;
    Ok(TailBreakdown {
        far_time: time_part.hi(),
        far_radius: radius_part.hi(),
        cover: (time_part + radius_part).hi(),
        corner_region: corner.hi(),
    })
}

/// Certified upper bound on the J integrand over the complement of
/// `[-T, T] x [0, R]`.
pub fn tail_bound_j(e: &Exponents, t: f64, r: f64) -> Result<f64, QuadError> {
    Ok(tail_breakdown(e, t, r)?.cover)
}
