//! Strict inductive limits of finite-dimensional Hilbert spaces.
//!
//! Level `i` of a ladder is `C^dim(i)` with the standard inner product, and the
//! connecting maps are zero padding. The union of all levels is represented by
//! [`PhiElement`]; the completion is the square-summable coefficient space,
//! represented by [`HilbertElement`] with a certified tail bound.

mod hilbert;
mod phi;
mod spec;
mod universal;

use std::sync::Arc;

use num_complex::Complex64;

pub use hilbert::{
    embed_to_hilbert, power_tail_lower, CoeffRule, HilbertContext, HilbertElement, TailKind,
    TailRule,
};
pub use phi::PhiElement;
pub use spec::LadderSpec;
pub use universal::{induce_map, LevelMap, LevelMapFamily};

use crate::error::{Error, Result};

/// A validated ladder together with the operations that need it: element
/// construction, projections from the completion, and embeddings into it.
#[derive(Debug, Clone)]
pub struct LadderContext {
    ladder: Arc<LadderSpec>,
}

/// Builds the ladder context for a dimension sequence, checking that it is
/// strictly increasing and starts at dimension 1 or more.
pub fn ladder_from_hilbert(dims: LadderSpec) -> Result<LadderContext> {
    dims.validate()?;
    Ok(LadderContext {
        ladder: Arc::new(dims),
    })
}

/// The completion of the ladder: the square-summable coefficient space over
/// the union basis.
pub fn completion_of_ladder(_ctx: &LadderContext) -> HilbertContext {
    HilbertContext::new()
}

impl LadderContext {
    pub fn ladder(&self) -> &Arc<LadderSpec> {
        &self.ladder
    }

    pub fn element(&self, level: usize, coeffs: Vec<Complex64>) -> Result<PhiElement> {
        PhiElement::new(Arc::clone(&self.ladder), level, coeffs)
    }

    pub fn element_from_coeffs(&self, coeffs: Vec<Complex64>) -> Result<PhiElement> {
        PhiElement::from_coeffs(Arc::clone(&self.ladder), coeffs)
    }

    pub fn element_from_real(&self, coeffs: &[f64]) -> Result<PhiElement> {
        PhiElement::from_real(Arc::clone(&self.ladder), coeffs)
    }

    pub fn basis(&self, index: usize) -> Result<PhiElement> {
        PhiElement::basis(Arc::clone(&self.ladder), index)
    }

    /// `P_n x`: the first `n` coefficients, placed at the smallest level of
    /// dimension at least `n` with zeros after position `n`.
    pub fn project(&self, x: &HilbertElement, n: usize) -> Result<PhiElement> {
        let level = self.ladder.level_for_dim(n)?;
        let dim = self.ladder.dim(level)?;
        let mut coeffs = Vec::with_capacity(dim);
        for i in 1..=n {
            coeffs.push(x.coeff(i)?);
        }
        coeffs.resize(dim, Complex64::new(0.0, 0.0));
        PhiElement::new(Arc::clone(&self.ladder), level, coeffs)
    }

    pub fn embed(&self, x: &PhiElement) -> Result<HilbertElement> {
        if **x.ladder() != *self.ladder {
            return Err(Error::LadderMismatch);
        }
        Ok(embed_to_hilbert(x))
    }

    pub fn include(&self, x: &PhiElement, level: usize) -> Result<PhiElement> {
        x.include(level)
    }

    pub fn inner_product(&self, x: &PhiElement, y: &PhiElement) -> Result<Complex64> {
        if **x.ladder() != *self.ladder {
            return Err(Error::LadderMismatch);
        }
        x.inner_product(y)
    }

    pub fn canonical_level(&self, x: &PhiElement) -> usize {
        x.canonical_level()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn geometric_half() -> HilbertElement {
        HilbertElement::geometric(0.5).unwrap()
    }

    #[test]
    fn project_examples() {
        let ctx = ladder_from_hilbert(LadderSpec::identity()).unwrap();
        let x = geometric_half();
        let p = ctx.project(&x, 2).unwrap();
        assert_eq!(p.level(), 2);
        assert_eq!(p.coeffs(), &[c(1.0), c(0.5)]);

        let even = ladder_from_hilbert(LadderSpec::even()).unwrap();
        let p = even.project(&x, 3).unwrap();
        assert_eq!(p.level(), 2);
        assert_eq!(p.coeffs(), &[c(1.0), c(0.5), c(0.25), c(0.0)]);
    }

    #[test]
    fn projections_nest() {
        let ctx = ladder_from_hilbert(LadderSpec::identity()).unwrap();
        let x = geometric_half();
        let p5 = ctx.project(&x, 5).unwrap();
        let p2 = ctx.project(&x, 2).unwrap();
        let p2p5 = ctx.project(&ctx.embed(&p5).unwrap(), 2).unwrap();
        assert_eq!(p2p5.coeffs(), p2.coeffs());
        let p2p2 = ctx.project(&ctx.embed(&p2).unwrap(), 2).unwrap();
        assert_eq!(p2p2.coeffs(), p2.coeffs());
    }

    #[test]
    fn project_needs_data() {
        let ctx = ladder_from_hilbert(LadderSpec::identity()).unwrap();
        let tail: TailRule = Arc::new(|n| if n == 0 { 1.0 } else { 0.0 });
        let x =
            HilbertElement::from_parts("one", vec![c(1.0)], tail, TailKind::Exact, Some(1), None)
                .unwrap();
        assert!(ctx.project(&x, 1).is_ok());
        assert!(matches!(
            ctx.project(&x, 3),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn ladder_validation() {
        assert!(matches!(
            ladder_from_hilbert(LadderSpec::Explicit(vec![3, 3, 4])),
            Err(Error::Specification(_))
        ));
        assert!(ladder_from_hilbert(LadderSpec::Linear { step: 0 }).is_err());
    }

    #[test]
    fn embed_examples() {
        let ctx = ladder_from_hilbert(LadderSpec::identity()).unwrap();
        let zero = ctx.element(3, vec![c(0.0); 3]).unwrap();
        assert_eq!(ctx.embed(&zero).unwrap().norm(), 0.0);
        let x = ctx.element_from_real(&[3.0, 4.0]).unwrap();
        let h = ctx.embed(&x).unwrap();
        assert_eq!(h.norm(), 5.0);
        assert_eq!(h.tail_norm(2).unwrap(), 0.0);
    }

    #[test]
    fn completion_agrees_with_ladder_inner_product() {
        let ctx = ladder_from_hilbert(LadderSpec::identity()).unwrap();
        let hil = completion_of_ladder(&ctx);
        let x = ctx.element_from_real(&[1.0, 2.0]).unwrap();
        let y = ctx.element_from_real(&[3.0, 4.0]).unwrap();
        let lhs = ctx.inner_product(&x, &y).unwrap();
        let rhs = hil
            .inner_product(&ctx.embed(&x).unwrap(), &ctx.embed(&y).unwrap())
            .unwrap();
        assert_eq!(lhs, c(11.0));
        assert_eq!(lhs, rhs);

        let h = ctx.embed(&x).unwrap();
        let n = 2;
        let pn = h.truncated_norm(n).unwrap();
        let split = pn * pn + h.tail_norm(n).unwrap().powi(2);
        assert!((x.norm_sqr() - split).abs() <= 1e-12 * x.norm_sqr());

        let g = geometric_half();
        assert!((0..200).all(|n| g.tail_norm(n).unwrap() > 0.0));
    }

    fn phi_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 0..12)
    }

    fn to_complex(v: &[(f64, f64)]) -> Vec<Complex64> {
        v.iter().map(|&(a, b)| Complex64::new(a, b)).collect()
    }

    proptest! {
        #[test]
        fn composition_law(v in phi_strategy(), dj in 0usize..4, dk in 0usize..4, step in 1usize..3) {
            let ctx = ladder_from_hilbert(LadderSpec::Linear { step }).unwrap();
            let x = ctx.element_from_coeffs(to_complex(&v)).unwrap();
            let j = x.level() + dj;
            let k = j + dk;
            let via = x.include(j).unwrap().include(k).unwrap();
            let direct = x.include(k).unwrap();
            prop_assert_eq!(via.coeffs(), direct.coeffs());
        }

        #[test]
        fn inner_product_well_defined(a in phi_strategy(), b in phi_strategy(), extra in 0usize..5) {
            let ctx = ladder_from_hilbert(LadderSpec::identity()).unwrap();
            let x = ctx.element_from_coeffs(to_complex(&a)).unwrap();
            let y = ctx.element_from_coeffs(to_complex(&b)).unwrap();
            let base = x.level().max(y.level());
            let v0 = x.inner_product_at(&y, base).unwrap();
            let v1 = x.inner_product_at(&y, base + extra).unwrap();
            prop_assert_eq!(v0, v1);
            let xc = x.canonical();
            let yc = y.canonical();
            let vc = xc.inner_product(&yc).unwrap();
            prop_assert_eq!(v0, vc);
        }

        #[test]
        fn pythagoras_for_finite(a in phi_strategy(), n in 0usize..14) {
            let h = HilbertElement::finite(to_complex(&a));
            let total = h.norm().powi(2);
            let split = h.truncated_norm(n).unwrap().powi(2) + h.tail_norm(n).unwrap().powi(2);
            prop_assert!((total - split).abs() <= 1e-12 * total.max(1e-300));
        }
    }
}
