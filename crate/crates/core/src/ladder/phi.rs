use std::sync::Arc;

use num_complex::Complex64;

use super::LadderSpec;
use crate::error::{Error, Result};

/// An element of the union of the ladder levels, presented at a specific level.
///
/// The coefficient vector always has exactly `dim(level)` entries. Two elements
/// compare equal when their canonical forms agree, regardless of the level at
/// which they are presented.
#[derive(Debug, Clone)]
pub struct PhiElement {
    ladder: Arc<LadderSpec>,
    level: usize,
    coeffs: Vec<Complex64>,
}

impl PhiElement {
    pub fn new(ladder: Arc<LadderSpec>, level: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let expected = ladder.dim(level)?;
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: coeffs.len(),
            });
        }
        Ok(PhiElement {
            ladder,
            level,
            coeffs,
        })
    }

    /// Places `coeffs` at the smallest level that can hold them, zero padding
    /// up to that level's dimension.
    pub fn from_coeffs(ladder: Arc<LadderSpec>, mut coeffs: Vec<Complex64>) -> Result<Self> {
        let level = ladder.level_for_dim(coeffs.len())?;
        coeffs.resize(ladder.dim(level)?, Complex64::new(0.0, 0.0));
        PhiElement::new(ladder, level, coeffs)
    }

    pub fn from_real(ladder: Arc<LadderSpec>, coeffs: &[f64]) -> Result<Self> {
        PhiElement::from_coeffs(
            ladder,
            coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zero(ladder: Arc<LadderSpec>) -> Result<Self> {
        PhiElement::from_coeffs(ladder, Vec::new())
    }

    /// Basis vector `e_index` (1-based).
    pub fn basis(ladder: Arc<LadderSpec>, index: usize) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidParameter("basis index starts at 1".into()));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); index];
        coeffs[index - 1] = Complex64::new(1.0, 0.0);
        PhiElement::from_coeffs(ladder, coeffs)
    }

    pub fn ladder(&self) -> &Arc<LadderSpec> {
        &self.ladder
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Index (1-based) of the last nonzero coefficient, 0 for the zero element.
    /// Only exact zeros count as zero.
    pub fn support(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .map_or(0, |i| i + 1)
    }

    /// Smallest level whose dimension covers the support.
    pub fn canonical_level(&self) -> usize {
        // The support never exceeds dim(level), so the lookup cannot leave the ladder.
        self.ladder
            .level_for_dim(self.support())
            .expect("support lies within the presented level")
    }

    /// The same element presented at its canonical level.
    pub fn canonical(&self) -> PhiElement {
        let level = self.canonical_level();
        let dim = self.ladder.dim(level).expect("canonical level is defined");
        PhiElement {
            ladder: Arc::clone(&self.ladder),
            level,
            coeffs: self.coeffs[..dim].to_vec(),
        }
    }

    /// Isometric inclusion into level `target`, zero padding the coefficients.
    pub fn include(&self, target: usize) -> Result<PhiElement> {
        if target < self.level {
            return Err(Error::LevelOrder {
                from: self.level,
                to: target,
            });
        }
        let dim = self.ladder.dim(target)?;
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(dim, Complex64::new(0.0, 0.0));
        Ok(PhiElement {
            ladder: Arc::clone(&self.ladder),
            level: target,
            coeffs,
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<x, y> = sum x_i conj(y_i)`, evaluated at the larger of the two levels.
    pub fn inner_product(&self, other: &PhiElement) -> Result<Complex64> {
        let level = self.level.max(other.level);
        self.inner_product_at(other, level)
    }

    /// Inner product with both arguments first included into `level`.
    pub fn inner_product_at(&self, other: &PhiElement, level: usize) -> Result<Complex64> {
        if self.ladder != other.ladder {
            return Err(Error::LadderMismatch);
        }
        let x = self.include(level)?;
        let y = other.include(level)?;
        Ok(x.coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// `a*x + b*y`, presented at the larger of the two levels.
    pub fn linear_combination(
        a: Complex64,
        x: &PhiElement,
        b: Complex64,
        y: &PhiElement,
    ) -> Result<PhiElement> {
        if x.ladder != y.ladder {
            return Err(Error::LadderMismatch);
        }
        let level = x.level.max(y.level);
        let xs = x.include(level)?;
        let ys = y.include(level)?;
        let coeffs = xs
            .coeffs
            .iter()
            .zip(&ys.coeffs)
            .map(|(p, q)| a * p + b * q)
            .collect();
        PhiElement::new(Arc::clone(&x.ladder), level, coeffs)
    }
}

impl PartialEq for PhiElement {
    fn eq(&self, other: &Self) -> bool {
        if self.ladder != other.ladder {
            return false;
        }
        let (a, b) = (self.canonical(), other.canonical());
        a.level == b.level && a.coeffs == b.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn identity() -> Arc<LadderSpec> {
        Arc::new(LadderSpec::identity())
    }

    #[test]
    fn canonical_level_examples() {
        let x = PhiElement::from_real(identity(), &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(x.level(), 3);
        assert_eq!(x.canonical_level(), 1);

        let x = PhiElement::from_real(identity(), &[0.0, 0.0, 5.0]).unwrap();
        assert_eq!(x.canonical_level(), 3);

        let even = Arc::new(LadderSpec::even());
        let x = PhiElement::new(even, 2, vec![c(1.0), c(2.0), c(3.0), c(0.0)]).unwrap();
        assert_eq!(x.canonical_level(), 2);

        let z = PhiElement::zero(identity()).unwrap();
        assert_eq!(z.canonical_level(), 1);
    }

    #[test]
    fn construction_checks_length() {
        let err = PhiElement::new(identity(), 3, vec![c(1.0)]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                actual: 1
            }
        );
    }

    #[test]
    fn include_pads_and_composes() {
        let x = PhiElement::from_real(identity(), &[1.0, 2.0]).unwrap();
        let y = x.include(4).unwrap();
        assert_eq!(y.coeffs(), &[c(1.0), c(2.0), c(0.0), c(0.0)]);
        assert_eq!(
            x.include(3).unwrap().include(7).unwrap().coeffs(),
            x.include(7).unwrap().coeffs()
        );
        assert_eq!(
            y.include(2).unwrap_err(),
            Error::LevelOrder { from: 4, to: 2 }
        );
    }

    #[test]
    fn include_is_isometric() {
        let x = PhiElement::from_real(identity(), &[3.0, 4.0]).unwrap();
        assert_eq!(x.norm(), 5.0);
        assert_eq!(x.include(5).unwrap().norm(), 5.0);
    }

    #[test]
    fn inner_product_examples() {
        let e1 = PhiElement::basis(identity(), 1).unwrap();
        assert_eq!(e1.inner_product(&e1).unwrap(), c(1.0));

        let x = PhiElement::from_real(identity(), &[1.0, 2.0]).unwrap();
        let y = PhiElement::from_real(identity(), &[3.0, 4.0]).unwrap();
        assert_eq!(x.inner_product(&y).unwrap(), c(11.0));
        assert_eq!(x.inner_product(&y.include(6).unwrap()).unwrap(), c(11.0));

        let other = PhiElement::from_real(Arc::new(LadderSpec::even()), &[1.0]).unwrap();
        assert_eq!(x.inner_product(&other).unwrap_err(), Error::LadderMismatch);
    }

    #[test]
    fn inner_product_is_hermitian() {
        let x = PhiElement::from_coeffs(identity(), vec![Complex64::new(0.0, 1.0)]).unwrap();
        let y = PhiElement::from_coeffs(identity(), vec![Complex64::new(1.0, 0.0)]).unwrap();
        assert_eq!(x.inner_product(&y).unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(y.inner_product(&x).unwrap(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn equality_uses_canonical_form() {
        let x = PhiElement::from_real(identity(), &[1.0, 2.0]).unwrap();
        assert_eq!(x, x.include(9).unwrap());
        let y = PhiElement::from_real(identity(), &[1.0, 2.0, 1e-300]).unwrap();
        assert_ne!(x, y);
    }
}
