//! Certified numerics for a sharp extension inequality: interval
//! arithmetic, rigorous quadrature with tail bounds, the J(θ) pipeline,
//! and the Gaussian symmetry algebra.

// `!(x > y)` deliberately rejects NaN; `Interval::div` is fallible.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::should_implement_trait)]

pub mod cli;
pub mod interval;
pub mod quad;
pub mod special;
pub mod strichartz;
pub mod symmetry;
