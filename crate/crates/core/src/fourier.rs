//! Functions on the circle as coefficient sequences.
//!
//! Convention: `c_n = (1/2pi) int_0^{2pi} f(theta) exp(-i n theta) dtheta`,
//! approximated by the `N`-point equispaced trapezoid rule. Integer modes are
//! laid out on `1, 2, 3, ...` by [`IndexInterleaving`] so that the coefficient
//! vector can be fed to the ladder and seminorm machinery.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::dual::{seminorm_partial_sums_of, PartialSums, SeminormIndex};
use crate::error::{Error, Result};

/// Declared regularity of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    SquareIntegrableOnly,
}

/// A function on `[0, 2pi)`.
#[derive(Clone)]
pub struct TorusFunction {
    label: String,
    smoothness: Smoothness,
    rule: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl fmt::Debug for TorusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusFunction")
            .field("label", &self.label)
            .field("smoothness", &self.smoothness)
            .finish_non_exhaustive()
    }
}

impl TorusFunction {
    pub fn new(
        label: impl Into<String>,
        smoothness: Smoothness,
        rule: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        TorusFunction {
            label: label.into(),
            smoothness,
            rule: Arc::new(rule),
        }
    }

    pub fn constant(value: f64) -> Self {
        TorusFunction::new("const", Smoothness::Smooth, move |_| {
            Complex64::new(value, 0.0)
        })
    }

    pub fn cosine() -> Self {
        TorusFunction::new("cosine", Smoothness::Smooth, |t| {
            Complex64::new(t.cos(), 0.0)
        })
    }

    pub fn exp_cos() -> Self {
        TorusFunction::new("expcos", Smoothness::Smooth, |t| {
            Complex64::new(t.cos().exp(), 0.0)
        })
    }

    /// `f(theta) = theta` on `[0, 2pi)`, discontinuous as a periodic function.
    pub fn sawtooth() -> Self {
        TorusFunction::new("sawtooth", Smoothness::SquareIntegrableOnly, |t| {
            Complex64::new(t.rem_euclid(2.0 * PI), 0.0)
        })
    }

    /// Looks up `const`, `cosine`, `expcos` or `sawtooth`.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "const" => Ok(TorusFunction::constant(1.0)),
            "cosine" => Ok(TorusFunction::cosine()),
            "expcos" => Ok(TorusFunction::exp_cos()),
            "sawtooth" => Ok(TorusFunction::sawtooth()),
            other => Err(Error::Usage(format!(
                "unknown torus function {other:?} (expected const, cosine, expcos or sawtooth)"
            ))),
        }
    }

    /// `a*f + b*g`, smooth only when both parts are.
    pub fn combine(a: Complex64, f: &TorusFunction, b: Complex64, g: &TorusFunction) -> Self {
        let (rf, rg) = (Arc::clone(&f.rule), Arc::clone(&g.rule));
        let smoothness = if f.smoothness == Smoothness::Smooth && g.smoothness == Smoothness::Smooth
        {
            Smoothness::Smooth
        } else {
            Smoothness::SquareIntegrableOnly
        };
        TorusFunction::new(
            format!("combo({},{})", f.label, g.label),
            smoothness,
            move |t| a * rf(t) + b * rg(t),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        (self.rule)(theta)
    }

    /// Values at `theta_j = 2 pi j / N`, `j = 0..N`.
    pub fn samples(&self, grid: usize) -> Vec<Complex64> {
        (0..grid)
            .map(|j| self.eval(2.0 * PI * j as f64 / grid as f64))
            .collect()
    }
}

/// The bijection `Z -> {1, 2, ...}`: `0 -> 1, 1 -> 2, -1 -> 3, 2 -> 4, ...`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IndexInterleaving;

impl IndexInterleaving {
    pub fn to_natural(n: i64) -> u64 {
        if n > 0 {
            2 * n as u64
        } else {
            2 * n.unsigned_abs() + 1
        }
    }

    pub fn to_integer(k: u64) -> i64 {
        assert!(k >= 1, "natural indices start at 1");
        if k.is_multiple_of(2) {
            (k / 2) as i64
        } else {
            -(((k - 1) / 2) as i64)
        }
    }
}

fn check_grid(n: i64, grid: usize) -> Result<()> {
    if grid < 8 || grid % 2 == 1 {
        return Err(Error::InvalidGrid(grid));
    }
    let need = 2 * n.unsigned_abs();
    if grid as u64 <= need {
        return Err(Error::Aliasing {
            mode: n,
            grid,
            need,
        });
    }
    Ok(())
}

/// Trapezoid coefficient from precomputed samples. The phase is reduced
/// modulo the grid before taking sines and cosines.
fn coeff_from_samples(samples: &[Complex64], n: i64) -> Complex64 {
    let grid = samples.len();
    let g = grid as i64;
    let sum: Complex64 = samples
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let phase = (n * j as i64).rem_euclid(g);
            let angle = -2.0 * PI * phase as f64 / grid as f64;
            f * Complex64::new(angle.cos(), angle.sin())
        })
        .sum();
    sum / grid as f64
}

/// `c_n` by the `N`-point trapezoid rule. Requires `N` even, `N >= 8` and
/// `N > 2|n|`.
pub fn fourier_coeff(f: &TorusFunction, n: i64, grid: usize) -> Result<Complex64> {
    check_grid(n, grid)?;
    Ok(coeff_from_samples(&f.samples(grid), n))
}

/// Coefficients `c_n` for `|n| <= N/2 - 1`, placed at their interleaved
/// positions. The result has length `N - 1`; entry `k-1` holds the mode
/// `IndexInterleaving::to_integer(k)`.
pub fn coeffs_to_sequence(f: &TorusFunction, grid: usize) -> Result<Vec<Complex64>> {
    let max_mode = (grid / 2).saturating_sub(1) as i64;
    check_grid(max_mode, grid)?;
    let samples = f.samples(grid);
    Ok((1..=2 * max_mode as u64 + 1)
        .map(|k| coeff_from_samples(&samples, IndexInterleaving::to_integer(k)))
        .collect())
}

/// Both sides of Parseval's identity on an `N`-point grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsevalCheck {
    /// `sum_{|n| < N/2} |c_n|^2`
    pub lhs: f64,
    /// `(1/2pi) int |f|^2` by the trapezoid rule
    pub rhs: f64,
    pub gap: f64,
}

pub fn parseval_check(f: &TorusFunction, grid: usize) -> Result<ParsevalCheck> {
    let seq = coeffs_to_sequence(f, grid)?;
    let lhs: f64 = seq.iter().map(Complex64::norm_sqr).sum();
    let rhs = f.samples(grid).iter().map(Complex64::norm_sqr).sum::<f64>() / grid as f64;
    Ok(ParsevalCheck {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    })
}

/// Seminorm partial sums of the interleaved coefficient vector, one entry per
/// requested `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RapidDecayReport {
    pub smoothness: Smoothness,
    pub rows: Vec<PartialSums>,
}

impl RapidDecayReport {
    /// Stabilization is only claimed for functions declared smooth.
    pub fn stabilization_asserted(&self) -> bool {
        self.smoothness == Smoothness::Smooth
    }

    /// Every row stabilized. Meaningful only when asserted.
    pub fn all_stabilized(&self) -> bool {
        self.rows.iter().all(|r| r.stabilized)
    }

    /// `true` for square-integrable-only inputs, otherwise whether every row
    /// stabilized.
    pub fn passed(&self) -> bool {
        !self.stabilization_asserted() || self.all_stabilized()
    }
}

pub fn rapid_decay_report(f: &TorusFunction, ks: &[u32], grid: usize) -> Result<RapidDecayReport> {
    let seq = coeffs_to_sequence(f, grid)?;
    Ok(RapidDecayReport {
        smoothness: f.smoothness(),
        rows: ks
            .iter()
            .map(|&k| seminorm_partial_sums_of(&seq, SeminormIndex(k)))
            .collect(),
    })
}
