//! The ladder of polynomials of degree at most `n`, embedded into `L^2(R)` by
//! `P(xi) -> exp(-xi^2/4) P(xi)`.
//!
//! The induced inner product is `<P, Q> = int P Q exp(-xi^2/2) dxi`, which on
//! monomials reduces to Gaussian moments `(m-1)!! sqrt(2 pi)`. All inner
//! products are therefore rational multiples of `sqrt(2 pi)` and are computed
//! exactly. Gram-Schmidt over the monomials yields the probabilists' Hermite
//! polynomials; the normalizing factors are tracked as
//! `rational * sqrt(rational) * (2 pi)^(-1/4)`.

mod exact;
mod poly;
mod quadrature;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use exact::{RationalSqrt, SqrtTwoPiScalar};
pub use poly::ExactPolynomial;
pub use quadrature::{TrapezoidRule, WINDOW_HALF_WIDTH, WINDOW_POINTS};

use crate::error::{Error, Result};

/// `int xi^m exp(-xi^2/2) dxi`: zero for odd `m`, `(m-1)!! sqrt(2 pi)` for even `m`.
pub fn gaussian_moment(m: usize) -> SqrtTwoPiScalar {
    if m % 2 == 1 {
        return SqrtTwoPiScalar::zero();
    }
    let mut acc = BigInt::one();
    let mut k = m.saturating_sub(1);
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    SqrtTwoPiScalar(BigRational::from_integer(acc))
}

/// A polynomial viewed as the function `xi -> exp(-xi^2/4) P(xi)` in `L^2(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianWeightedPoly {
    poly: ExactPolynomial,
}

impl GaussianWeightedPoly {
    pub fn poly(&self) -> &ExactPolynomial {
        &self.poly
    }

    pub fn eval(&self, xi: f64) -> f64 {
        (-xi * xi / 4.0).exp() * self.poly.eval_f64(xi)
    }

    /// Squared `L^2` norm, exact.
    pub fn norm_sqr(&self) -> SqrtTwoPiScalar {
        inner_product_weighted(&self.poly, &self.poly)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

pub fn embed_poly(p: &ExactPolynomial) -> GaussianWeightedPoly {
    GaussianWeightedPoly { poly: p.clone() }
}

/// `int P Q exp(-xi^2/2) dxi`, expanded over Gaussian moments.
pub fn inner_product_weighted(p: &ExactPolynomial, q: &ExactPolynomial) -> SqrtTwoPiScalar {
    let mut acc = BigRational::zero();
    for (a, pa) in p.coeffs().iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (b, qb) in q.coeffs().iter().enumerate() {
            if (a + b) % 2 == 1 || qb.is_zero() {
                continue;
            }
            acc += pa * qb * gaussian_moment(a + b).0;
        }
    }
    SqrtTwoPiScalar(acc)
}

/// `(n+1) x (n+1)` Gram matrix of the monomials, `G[a][b] = moment(a + b)`.
pub fn gram_matrix(n: usize) -> Vec<Vec<SqrtTwoPiScalar>> {
    (0..=n)
        .map(|a| (0..=n).map(|b| gaussian_moment(a + b)).collect())
        .collect()
}

/// One element of the orthonormal basis: `normalization * (2 pi)^(-1/4) * poly`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthonormalPoly {
    pub degree: usize,
    /// Monic orthogonal polynomial part.
    pub poly: ExactPolynomial,
    /// `<poly, poly>` in the weighted inner product.
    pub norm_sqr: SqrtTwoPiScalar,
    /// `1 / sqrt(norm_sqr / sqrt(2 pi))`.
    pub normalization: RationalSqrt,
}

impl OrthonormalPoly {
    /// The full scale factor `normalization * (2 pi)^(-1/4)` as a float.
    pub fn scale_f64(&self) -> f64 {
        self.normalization.to_f64() * (2.0 * PI).powf(-0.25)
    }

    /// Value of the normalized polynomial (without the Gaussian factor).
    pub fn eval(&self, xi: f64) -> f64 {
        self.scale_f64() * self.poly.eval_f64(xi)
    }

    /// Value of the embedded function `exp(-xi^2/4) p(xi)`.
    pub fn eval_embedded(&self, xi: f64) -> f64 {
        (-xi * xi / 4.0).exp() * self.eval(xi)
    }
}

/// Exact `<p_a, p_b>` of two normalized basis elements. The `(2 pi)^(-1/4)`
/// factors cancel against the `sqrt(2 pi)` of the moment domain.
pub fn orthonormal_inner_product(a: &OrthonormalPoly, b: &OrthonormalPoly) -> RationalSqrt {
    let raw = inner_product_weighted(&a.poly, &b.poly);
    let factor = &a.normalization * &b.normalization;
    RationalSqrt::new(
        factor.coeff() * raw.rational_part(),
        factor.radicand().clone(),
    )
}

/// Classical Gram-Schmidt over `1, xi, ..., xi^n` in exact arithmetic.
pub fn orthonormal_basis(n: usize) -> Vec<OrthonormalPoly> {
    let mut basis: Vec<OrthonormalPoly> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let monomial = ExactPolynomial::monomial(k);
        let mut poly = monomial.clone();
        for prev in &basis {
            let proj = inner_product_weighted(&monomial, &prev.poly).0 / &prev.norm_sqr.0;
            if !proj.is_zero() {
                poly = &poly - &prev.poly.scale(&proj);
            }
        }
        let norm_sqr = inner_product_weighted(&poly, &poly);
        debug_assert!(norm_sqr.0.is_positive());
        let normalization = RationalSqrt::inv_sqrt(&norm_sqr.0);
        basis.push(OrthonormalPoly {
            degree: k,
            poly,
            norm_sqr,
            normalization,
        });
    }
    basis
}

/// One row of the density table.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub degree: usize,
    /// Coefficient of the target along the degree-`n` basis function.
    pub coefficient: f64,
    /// `sqrt(max(0, ||t||^2 - sum_{k<=n} c_k^2))`.
    pub error: f64,
    /// `||t - sum_{k<=n} c_k psi_k||` computed directly on the nodes.
    pub residual: f64,
}

/// Best-approximation error of `target` in the span of the first `n+1`
/// embedded basis functions, for `n = 0..=n_max`, on the window rule.
///
/// The basis functions are evaluated with the normalized three-term
/// recurrence rather than the monomial expansion.
pub fn density_diagnostic(target: impl Fn(f64) -> f64, n_max: usize) -> Result<Vec<DensityRow>> {
    let rule = TrapezoidRule::window();
    let t: Vec<f64> = rule.nodes().iter().map(|&x| target(x)).collect();
    let norm_sqr = rule.dot(&t, &t);
    if !norm_sqr.is_finite() {
        return Err(Error::Diagnostic(
            "target does not have a finite L2 norm on the quadrature window".into(),
        ));
    }
    let basis = hermite_functions(rule.nodes(), n_max);
    let mut residual = t.clone();
    let mut captured = 0.0;
    let mut rows = Vec::with_capacity(n_max + 1);
    for (degree, psi) in basis.iter().enumerate() {
        let c = rule.dot(&t, psi);
        captured += c * c;
        for (r, p) in residual.iter_mut().zip(psi) {
            *r -= c * p;
        }
        rows.push(DensityRow {
            degree,
            coefficient: c,
            error: (norm_sqr - captured).max(0.0).sqrt(),
            residual: rule.dot(&residual, &residual).max(0.0).sqrt(),
        });
    }
    Ok(rows)
}

/// Normalized functions `exp(-x^2/4) He_k(x) / sqrt(k! sqrt(2 pi))` on `nodes`,
/// `k = 0..=n_max`, from
/// `psi_{k+1} = (x psi_k - sqrt(k) psi_{k-1}) / sqrt(k+1)`.
pub fn hermite_functions(nodes: &[f64], n_max: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(n_max + 1);
    let scale = (2.0 * PI).powf(-0.25);
    out.push(
        nodes
            .iter()
            .map(|&x| scale * (-x * x / 4.0).exp())
            .collect(),
    );
    for k in 0..n_max {
        let kf = k as f64;
        let next: Vec<f64> = nodes
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                let prev = if k == 0 { 0.0 } else { out[k - 1][j] };
                (x * out[k][j] - kf.sqrt() * prev) / (kf + 1.0).sqrt()
            })
            .collect();
        out.push(next);
    }
    out
}

/// Orthonormality residuals `|quadrature(<p_a, p_b>) - delta_ab|` for
/// `a, b <= n`, with the basis evaluated from its exact coefficients.
pub fn orthonormality_residuals(basis: &[OrthonormalPoly]) -> Vec<Vec<f64>> {
    let rule = TrapezoidRule::window();
    let values: Vec<Vec<f64>> = basis
        .iter()
        .map(|p| rule.nodes().iter().map(|&x| p.eval_embedded(x)).collect())
        .collect();
    values
        .iter()
        .enumerate()
        .map(|(a, va)| {
            values
                .iter()
                .enumerate()
                .map(|(b, vb)| {
                    let delta = if a == b { 1.0 } else { 0.0 };
                    (rule.dot(va, vb) - delta).abs()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::poly::rational;
    use super::*;

    fn moment_by_quadrature(m: usize) -> f64 {
        TrapezoidRule::window().integrate(|x| x.powi(m as i32) * (-x * x / 2.0).exp())
    }

    /// He_{n+1} = xi He_n - n He_{n-1}
    fn hermite_recurrence(n: usize) -> Vec<ExactPolynomial> {
        let mut out = vec![ExactPolynomial::one(), ExactPolynomial::monomial(1)];
        for k in 1..n {
            let next = &out[k].shift() - &out[k - 1].scale(&rational(k as i64, 1));
            out.push(next);
        }
        out.truncate(n + 1);
        out
    }

    fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
        let n = m.len();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                let f = &m[r][col] / &p;
                for c in col..n {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn moment_examples() {
        assert!(gaussian_moment(1).is_zero());
        assert_eq!(gaussian_moment(0), SqrtTwoPiScalar::from_integer(1));
        assert!((gaussian_moment(0).to_f64() - moment_by_quadrature(0)).abs() < 1e-10);
        assert!((gaussian_moment(0).to_f64() - 2.5066282746).abs() < 1e-10);
        assert_eq!(gaussian_moment(4), SqrtTwoPiScalar::from_integer(3));
        assert!((gaussian_moment(4).to_f64() - moment_by_quadrature(4)).abs() < 1e-10);
    }

    #[test]
    fn moment_recurrence() {
        for m in (2..=40).step_by(2) {
            assert_eq!(
                gaussian_moment(m),
                gaussian_moment(m - 2).scale(&rational(m as i64 - 1, 1))
            );
        }
    }

    #[test]
    fn moments_match_quadrature() {
        for m in 0..=16 {
            let exact = gaussian_moment(m).to_f64();
            let quad = moment_by_quadrature(m);
            assert!((exact - quad).abs() < 1e-8, "m={m}: {exact} vs {quad}");
        }
    }

    #[test]
    fn embedding_examples() {
        assert!(embed_poly(&ExactPolynomial::zero()).is_zero());
        let one = embed_poly(&ExactPolynomial::one());
        assert_eq!(one.norm_sqr(), SqrtTwoPiScalar::from_integer(1));
        let quad = TrapezoidRule::window().integrate(|x| one.eval(x).powi(2));
        assert!((quad - (2.0 * PI).sqrt()).abs() < 1e-10);
        let sq = embed_poly(&ExactPolynomial::monomial(2));
        assert_eq!(sq.eval(0.0), 0.0);
    }

    #[test]
    fn weighted_inner_product_examples() {
        let one = ExactPolynomial::one();
        let x = ExactPolynomial::monomial(1);
        assert!(inner_product_weighted(&one, &x).is_zero());
        assert_eq!(
            inner_product_weighted(&x, &x),
            SqrtTwoPiScalar::from_integer(1)
        );
        let he2 = ExactPolynomial::from_integers(&[-1, 0, 1]);
        let v = inner_product_weighted(&he2, &he2);
        assert_eq!(v, SqrtTwoPiScalar::from_integer(2));
        let quad =
            TrapezoidRule::window().integrate(|t| (t * t - 1.0).powi(2) * (-t * t / 2.0).exp());
        assert!((v.to_f64() - quad).abs() < 1e-10);
    }

    #[test]
    fn gram_matrix_examples() {
        assert_eq!(gram_matrix(0), vec![vec![SqrtTwoPiScalar::from_integer(1)]]);
        let g1 = gram_matrix(1);
        assert_eq!(g1[0][0], SqrtTwoPiScalar::from_integer(1));
        assert!(g1[0][1].is_zero() && g1[1][0].is_zero());
        assert_eq!(g1[1][1], SqrtTwoPiScalar::from_integer(1));

        let g = gram_matrix(8);
        for size in 1..=9 {
            let minor: Vec<Vec<BigRational>> = (0..size)
                .map(|a| (0..size).map(|b| g[a][b].0.clone()).collect())
                .collect();
            assert!(determinant(minor).is_positive(), "minor {size}");
        }
        for a in 0..=8 {
            for b in 0..=8 {
                assert_eq!(g[a][b], g[b][a]);
            }
        }
    }

    #[test]
    fn basis_matches_hermite_and_is_orthonormal() {
        let basis = orthonormal_basis(8);
        let he = hermite_recurrence(8);
        for (p, h) in basis.iter().zip(&he) {
            assert_eq!(&p.poly, h, "degree {}", p.degree);
        }
        assert_eq!(basis[0].normalization, RationalSqrt::one());
        assert_eq!(basis[2].poly, ExactPolynomial::from_integers(&[-1, 0, 1]));
        for a in &basis {
            for b in &basis {
                let v = orthonormal_inner_product(a, b);
                let expected = if a.degree == b.degree {
                    RationalSqrt::one()
                } else {
                    RationalSqrt::zero()
                };
                assert_eq!(v, expected, "({}, {})", a.degree, b.degree);
            }
        }
    }

    #[test]
    fn orthonormality_under_quadrature() {
        let basis = orthonormal_basis(16);
        let res = orthonormality_residuals(&basis);
        let worst = res.iter().flatten().fold(0.0f64, |m, &v| m.max(v));
        assert!(worst < 1e-8, "worst residual {worst}");
    }

    #[test]
    fn recurrence_functions_match_exact_basis() {
        let basis = orthonormal_basis(12);
        let nodes: Vec<f64> = (-40..=40).map(|k| k as f64 * 0.25).collect();
        let psi = hermite_functions(&nodes, 12);
        for (k, p) in basis.iter().enumerate() {
            for (j, &x) in nodes.iter().enumerate() {
                assert!((psi[k][j] - p.eval_embedded(x)).abs() < 1e-9, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn density_examples() {
        let rows = density_diagnostic(|x| (-x * x / 4.0).exp(), 6).unwrap();
        assert!(rows[0].error < 1e-7);
        assert!(rows[0].residual < 1e-12);

        let rows = density_diagnostic(|x| x * (-x * x / 4.0).exp(), 6).unwrap();
        assert!(rows[0].error > 0.1);
        assert!(rows[1].error < 1e-7 && rows[1].residual < 1e-12);

        let rows = density_diagnostic(|x| (-x * x / 2.0).exp(), 16).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].error <= w[0].error);
        }
        // Only even degrees contribute for an even target.
        for pair in rows.iter().step_by(2).collect::<Vec<_>>().windows(2) {
            assert!(pair[1].error < pair[0].error);
        }

        assert!(density_diagnostic(|_| f64::INFINITY, 2).is_err());
    }

    #[test]
    fn density_against_independent_projection() {
        // e^{-x^2/2} has coefficients c_k = <t, psi_k> computed from the exact
        // monomial basis on a finer trapezoid grid.
        let basis = orthonormal_basis(8);
        let fine = TrapezoidRule::new(-12.0, 12.0, 4001);
        let target = |x: f64| (-x * x / 2.0).exp();
        let norm_sqr = PI.sqrt();
        let mut captured = 0.0;
        let rows = density_diagnostic(target, 8).unwrap();
        for (k, p) in basis.iter().enumerate() {
            let c = fine.integrate(|x| target(x) * p.eval_embedded(x));
            captured += c * c;
            let err = (norm_sqr - captured).max(0.0).sqrt();
            assert!((rows[k].error - err).abs() < 1e-6, "k={k}");
        }
    }
}
