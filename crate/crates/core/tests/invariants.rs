//! Property tests for structural invariants.

use num_complex::Complex64;
use paracert::interval::{Interval, IntervalError};
use paracert::quad::{bisect_refine, riemann_enclosure, tail_bound_j, Integrand, IntegrationBox};
use paracert::special::Exponents;
use paracert::strichartz::superadditivity_defect;
use paracert::symmetry::run_property_suite;
use proptest::prelude::*;

fn interval() -> impl Strategy<Value = Interval> {
    (-50.0f64..50.0, 0.0f64..10.0).prop_map(|(a, w)| Interval::new(a, a + w).unwrap())
}

/// A sub-interval of `x` chosen by two fractions.
fn shrink(x: Interval, u: f64, v: f64) -> Interval {
    let (u, v) = (u.min(v), u.max(v));
    let lo = (x.lo() + u * x.width()).clamp(x.lo(), x.hi());
    let hi = (x.lo() + v * x.width()).clamp(lo, x.hi());
    Interval::new(lo, hi).unwrap()
}

fn subset(a: Interval, b: Interval) -> bool {
    b.lo() <= a.lo() && a.hi() <= b.hi()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn arithmetic_is_inclusion_monotone(x in interval(), y in interval(), u in 0.0..1.0f64, v in 0.0..1.0f64) {
        let (xs, ys) = (shrink(x, u, v), shrink(y, v, u));
        prop_assert!(subset(xs + ys, x + y));
        prop_assert!(subset(xs - ys, x - y));
        prop_assert!(subset(xs * ys, x * y));
        if let (Ok(q), Ok(qs)) = (x.div(y), xs.div(ys)) {
            prop_assert!(subset(qs, q));
        }
    }

    #[test]
    fn elementary_is_inclusion_monotone(x in interval(), u in 0.0..1.0f64, v in 0.0..1.0f64) {
        let xs = shrink(x, u, v);
        prop_assert!(subset(xs.exp(), x.exp()));
        prop_assert!(subset(xs.sin(), x.sin()));
        prop_assert!(subset(xs.cos(), x.cos()));
        let (pos, pos_s) = (x.abs() + 1e-3, xs.abs() + 1e-3);
        prop_assert!(subset(pos_s.ln().unwrap(), pos.ln().unwrap()));
        prop_assert!(subset(pos_s.sqrt().unwrap(), pos.sqrt().unwrap()));
    }

    #[test]
    fn serialized_bounds_are_outward(x in interval()) {
        let json = serde_json::to_value(x).unwrap();
        let lo: f64 = json[0].as_str().unwrap().parse().unwrap();
        let hi: f64 = json[1].as_str().unwrap().parse().unwrap();
        prop_assert!(lo <= x.lo() && x.hi() <= hi);
    }

    #[test]
    fn superadditivity_defect_is_controlled(raw in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..6)) {
        let values: Vec<Complex64> = raw.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        let q = 6.0;
        let n = values.len() as f64;
        let (defect, pairsup) = superadditivity_defect(&values, q).unwrap();
        let bound = (q * n.powf(q - 1.0) * (n - 1.0) + (n - 1.0)) * pairsup;
        prop_assert!(defect <= bound * (1.0 + 1e-9) + 1e-9, "{defect} > {bound}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tail_bound_decreases_with_box(t in 5.0f64..80.0, r in 1.0f64..8.0, dt in 0.0f64..20.0, dr in 0.0f64..3.0, d in 1u32..=2) {
        let e = Exponents::stein_tomas(d);
        let small = tail_bound_j(&e, t, r).unwrap();
        let big = tail_bound_j(&e, t + dt, r + dr).unwrap();
        prop_assert!(big <= small, "{big} > {small}");
    }

    #[test]
    fn symmetry_suite_passes_for_any_seed(seed in any::<u64>()) {
        let report = run_property_suite(seed, 4).unwrap();
        prop_assert!(report.passed(), "{report:?}");
    }
}

/// `x ↦ exp(-x)`; its integral over [0, b] is 1 - e^{-b}.
struct Decay;

impl Integrand for Decay {
    fn dim(&self) -> usize {
        1
    }
    fn eval(&self, cell: &[Interval]) -> Result<Interval, IntervalError> {
        Ok((-cell[0]).exp())
    }
    fn name(&self) -> String {
        "exp(-x)".into()
    }
    fn is_nonnegative(&self) -> bool {
        true
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn riemann_enclosure_contains_integral(b in 0.1f64..20.0, n in 1usize..400) {
        let domain = IntegrationBox::from_bounds(&[(0.0, b)]).unwrap();
        let enc = riemann_enclosure(&Decay, &domain, &[n]).unwrap();
        let exact = Interval::ONE - (-Interval::point(b)).exp();
        prop_assert!(enc.intersects(&exact));
        let fine = riemann_enclosure(&Decay, &domain, &[2 * n]).unwrap();
        prop_assert!(fine.width() <= enc.width());
    }

    #[test]
    fn adaptive_refinement_stays_consistent(b in 0.5f64..5.0) {
        let domain = IntegrationBox::from_bounds(&[(0.0, b)]).unwrap();
        let exact = Interval::ONE - (-Interval::point(b)).exp();
        let enc = bisect_refine(&Decay, &domain, &[4], 1e-3, 24).unwrap();
        prop_assert!(enc.intersects(&exact));
        prop_assert!(enc.width() <= 1e-3);
    }
}
