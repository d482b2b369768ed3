//! Linear functionals on the union of levels and the rapid-decrease seminorms.
//!
//! Every level is finite dimensional, so every coefficient sequence defines a
//! continuous functional on the union: pairing with an element only ever
//! touches finitely many coefficients. No growth condition is imposed on
//! [`DualFunctional`].

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Result;
use crate::ladder::{LadderSpec, PhiElement};

/// Increments of a partial-sum sequence below this are considered settled.
pub const STABILIZATION_TOLERANCE: f64 = 1e-12;

/// Number of consecutive settled increments required to flag stabilization.
pub const STABILIZATION_WINDOW: usize = 10;

/// A functional given by its coefficient rule `i -> f_i` (1-based).
#[derive(Clone)]
pub struct DualFunctional {
    label: String,
    rule: Arc<dyn Fn(usize) -> Complex64 + Send + Sync>,
}

impl fmt::Debug for DualFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DualFunctional")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl DualFunctional {
    pub fn new(
        label: impl Into<String>,
        rule: impl Fn(usize) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        DualFunctional {
            label: label.into(),
            rule: Arc::new(rule),
        }
    }

    pub fn zero() -> Self {
        DualFunctional::new("zero", |_| Complex64::new(0.0, 0.0))
    }

    /// `f_i = 1` for every `i`.
    pub fn ones() -> Self {
        DualFunctional::new("ones", |_| Complex64::new(1.0, 0.0))
    }

    /// Coordinate functional `f_i = [i = index]`.
    pub fn coordinate(index: usize) -> Self {
        DualFunctional::new(format!("delta_{index}"), move |i| {
            Complex64::new(if i == index { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// `f_i = i!`, overflowing to infinity past `i = 170`.
    pub fn factorial() -> Self {
        DualFunctional::new("factorial", |i| {
            Complex64::new((1..=i).map(|k| k as f64).product(), 0.0)
        })
    }

    /// `f_i = conj(y_i)` on the support of `y`, zero beyond, so that
    /// `pair(riesz(y), x) = <x, y>`.
    pub fn riesz(y: &PhiElement) -> Self {
        let coeffs: Vec<Complex64> = y.coeffs()[..y.support()]
            .iter()
            .map(Complex64::conj)
            .collect();
        DualFunctional::new("riesz", move |i| {
            coeffs
                .get(i.wrapping_sub(1))
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0))
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeff(&self, index: usize) -> Complex64 {
        (self.rule)(index)
    }

    /// `sum_i f_i x_i` over the coefficients of `x`. Terms with `x_i = 0` are
    /// skipped, so unbounded functionals pair with zero-padded vectors exactly.
    pub fn pair(&self, x: &PhiElement) -> Complex64 {
        x.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .map(|(i, c)| self.coeff(i + 1) * c)
            .sum()
    }

    /// The restriction to level `level`: its coefficients `f_1..f_dim` and its
    /// operator norm `sqrt(sum |f_i|^2)`.
    pub fn restrict(&self, ladder: &LadderSpec, level: usize) -> Result<Restriction> {
        let dim = ladder.dim(level)?;
        let coeffs: Vec<Complex64> = (1..=dim).map(|i| self.coeff(i)).collect();
        let norm = coeffs.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        Ok(Restriction { coeffs, norm })
    }
}

/// A functional restricted to one level.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    pub coeffs: Vec<Complex64>,
    pub norm: f64,
}

pub fn pair(f: &DualFunctional, x: &PhiElement) -> Complex64 {
    f.pair(x)
}

pub fn restrict_functional(
    f: &DualFunctional,
    ladder: &LadderSpec,
    level: usize,
) -> Result<Restriction> {
    f.restrict(ladder, level)
}

pub fn riesz_functional(y: &PhiElement) -> DualFunctional {
    DualFunctional::riesz(y)
}

/// Index `k` of the seminorm `q_k(x)^2 = sum n^(4k) |x_n|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeminormIndex(pub u32);

/// `q_k` of a finite coefficient vector. Computed as `sqrt(sum (n^(2k) |x_n|)^2)`
/// so that the weights do not overflow before the coefficients shrink them.
pub fn seminorm_qk(coeffs: &[Complex64], k: SeminormIndex) -> f64 {
    let e = 2 * k.0 as i32;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let w = ((i + 1) as f64).powi(e) * c.norm();
            w * w
        })
        .sum::<f64>()
        .sqrt()
}

/// Running values of `q_k` over the first `N` coefficients, `N = 1..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSums {
    pub k: SeminormIndex,
    pub values: Vec<f64>,
    /// The last [`STABILIZATION_WINDOW`] increments were all below
    /// [`STABILIZATION_TOLERANCE`].
    pub stabilized: bool,
}

impl PartialSums {
    pub fn last(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

/// Partial sums of `q_k` for a coefficient rule `n -> x_n` (1-based).
pub fn seminorm_partial_sums(
    rule: impl Fn(usize) -> Complex64,
    k: SeminormIndex,
    n_max: usize,
) -> PartialSums {
    let e = 2 * k.0 as i32;
    let mut acc = 0.0;
    let values: Vec<f64> = (1..=n_max)
        .map(|n| {
            let w = (n as f64).powi(e) * rule(n).norm();
            acc += w * w;
            acc.sqrt()
        })
        .collect();
    let stabilized = is_stabilized(&values);
    PartialSums {
        k,
        values,
        stabilized,
    }
}

/// Partial sums over a finite coefficient vector.
pub fn seminorm_partial_sums_of(coeffs: &[Complex64], k: SeminormIndex) -> PartialSums {
    seminorm_partial_sums(|n| coeffs[n - 1], k, coeffs.len())
}

/// The stabilization rule applied to a run of partial sums: more than
/// [`STABILIZATION_WINDOW`] values, and each of the last
/// [`STABILIZATION_WINDOW`] increments below [`STABILIZATION_TOLERANCE`].
pub fn is_stabilized(values: &[f64]) -> bool {
    if values.len() <= STABILIZATION_WINDOW {
        return false;
    }
    values[values.len() - STABILIZATION_WINDOW - 1..]
        .windows(2)
        .all(|w| (w[1] - w[0]).abs() < STABILIZATION_TOLERANCE)
}
