use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::PhiElement;
use crate::error::{Error, Result};

/// Coefficient rule `i -> x_i` for 1-based indices.
pub type CoeffRule = Arc<dyn Fn(usize) -> Complex64 + Send + Sync>;

/// Tail rule `n -> bound on sum_{i>n} |x_i|^2`.
pub type TailRule = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

/// Whether the tail rule is the exact tail or only an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailKind {
    Exact,
    UpperBound,
}

/// A square-summable coefficient family: a finite prefix, an optional rule
/// for any further coefficient, and a certified bound on the squared tail.
#[derive(Clone)]
pub struct HilbertElement {
    label: String,
    prefix: Vec<Complex64>,
    tail_sq: TailRule,
    tail_kind: TailKind,
    /// Largest `n` for which the tail rule is certified; `None` means every `n`.
    certified_to: Option<usize>,
    extender: Option<CoeffRule>,
    /// All coefficients past this index are zero.
    support: Option<usize>,
}

impl fmt::Debug for HilbertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HilbertElement")
            .field("label", &self.label)
            .field("prefix_len", &self.prefix.len())
            .field("tail_kind", &self.tail_kind)
            .field("certified_to", &self.certified_to)
            .field("has_extender", &self.extender.is_some())
            .field("support", &self.support)
            .finish()
    }
}

/// Number of terms summed directly before switching to the Euler-Maclaurin
/// bound in the power-law tail.
const POWER_DIRECT_TERMS: usize = 16;

impl HilbertElement {
    /// Finitely supported element with exact tails.
    pub fn finite(coeffs: Vec<Complex64>) -> Self {
        let mut suffix = vec![0.0; coeffs.len() + 1];
        for i in (0..coeffs.len()).rev() {
            suffix[i] = suffix[i + 1] + coeffs[i].norm_sqr();
        }
        let support = coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .map_or(0, |i| i + 1);
        let suffix = Arc::new(suffix);
        HilbertElement {
            label: "finite".into(),
            prefix: coeffs,
            tail_sq: Arc::new(move |n| suffix.get(n).copied().unwrap_or(0.0)),
            tail_kind: TailKind::Exact,
            certified_to: None,
            extender: Some(Arc::new(|_| Complex64::new(0.0, 0.0))),
            support: Some(support),
        }
    }

    /// `x_i = r^(i-1)` with exact tail `r^(2n) / (1 - r^2)`.
    pub fn geometric(ratio: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "geometric ratio must lie in (0, 1) for square summability, got {ratio}"
            )));
        }
        let r2 = ratio * ratio;
        Ok(HilbertElement {
            label: format!("geometric(r={ratio})"),
            prefix: Vec::new(),
            tail_sq: Arc::new(move |n| r2.powf(n as f64) / (1.0 - r2)),
            tail_kind: TailKind::Exact,
            certified_to: None,
            extender: Some(Arc::new(move |i| {
                Complex64::new(ratio.powf((i - 1) as f64), 0.0)
            })),
            support: None,
        })
    }

    /// `x_i = i^(-p)` for `p > 1/2`.
    ///
    /// The tail `sum_{i>n} i^(-2p)` is bounded above by summing a few terms
    /// directly and closing with an Euler-Maclaurin expansion truncated after a
    /// positive term. For completely monotone summands the remainder then has
    /// negative sign.
    pub fn power_law(exponent: f64) -> Result<Self> {
        if !(exponent > 0.5 && exponent.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "power-law exponent must exceed 1/2 for square summability, got {exponent}"
            )));
        }
        let s = 2.0 * exponent;
        Ok(HilbertElement {
            label: format!("power(p={exponent})"),
            prefix: Vec::new(),
            tail_sq: Arc::new(move |n| power_tail_upper(s, n)),
            tail_kind: TailKind::UpperBound,
            certified_to: None,
            extender: Some(Arc::new(move |i| {
                Complex64::new((i as f64).powf(-exponent), 0.0)
            })),
            support: None,
        })
    }

    /// General constructor. The tail rule is checked to be finite and
    /// nonincreasing on `0..=check_to`, and the known coefficients are checked
    /// against it.
    pub fn from_parts(
        label: impl Into<String>,
        prefix: Vec<Complex64>,
        tail_sq: TailRule,
        tail_kind: TailKind,
        certified_to: Option<usize>,
        extender: Option<CoeffRule>,
    ) -> Result<Self> {
        let element = HilbertElement {
            label: label.into(),
            prefix,
            tail_sq,
            tail_kind,
            certified_to,
            extender,
            support: None,
        };
        let check_to = certified_to.unwrap_or(element.prefix.len().max(64));
        element.verify(check_to)?;
        Ok(element)
    }

    /// Checks the tail invariants for `n` in `0..=n_max`.
    pub fn verify(&self, n_max: usize) -> Result<()> {
        let n_max = self.certified_to.map_or(n_max, |c| c.min(n_max));
        let t0 = (self.tail_sq)(0);
        if !t0.is_finite() || t0 < 0.0 {
            return Err(Error::Diagnostic(format!(
                "{}: tail bound at 0 is not finite ({t0})",
                self.label
            )));
        }
        let mut prev = t0;
        let mut accumulated = 0.0;
        for n in 1..=n_max {
            let t = (self.tail_sq)(n);
            if t > prev {
                return Err(Error::Diagnostic(format!(
                    "{}: tail bound increases at n={n}",
                    self.label
                )));
            }
            prev = t;
            if let Ok(c) = self.coeff(n) {
                accumulated += c.norm_sqr();
                let limit = match self.tail_kind {
                    TailKind::Exact => t0 - t,
                    TailKind::UpperBound => t0,
                };
                if accumulated > limit + 1e-12 * t0 {
                    return Err(Error::Diagnostic(format!(
                        "{}: coefficients up to {n} exceed the tail bound",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tail_kind(&self) -> TailKind {
        self.tail_kind
    }

    pub fn prefix(&self) -> &[Complex64] {
        &self.prefix
    }

    /// `Some(s)` when every coefficient past `s` is known to vanish.
    pub fn support(&self) -> Option<usize> {
        self.support
    }

    pub fn is_finitely_supported(&self) -> bool {
        self.support.is_some()
    }

    /// Coefficient `x_i` for a 1-based index.
    pub fn coeff(&self, index: usize) -> Result<Complex64> {
        if index == 0 {
            return Err(Error::InvalidParameter(
                "coefficient index starts at 1".into(),
            ));
        }
        if let Some(c) = self.prefix.get(index - 1) {
            return Ok(*c);
        }
        match &self.extender {
            Some(rule) => Ok(rule(index)),
            None => Err(Error::InsufficientData {
                requested: index,
                available: self.prefix.len(),
            }),
        }
    }

    /// Certified upper bound on `||x - P_n x||`; exact when the tail is exact.
    pub fn tail_norm(&self, n: usize) -> Result<f64> {
        if let Some(limit) = self.certified_to {
            if n > limit {
                return Err(Error::InsufficientData {
                    requested: n,
                    available: limit,
                });
            }
        }
        Ok((self.tail_sq)(n).sqrt())
    }

    /// Certified `||x||`.
    pub fn norm(&self) -> f64 {
        (self.tail_sq)(0).sqrt()
    }

    /// `||P_n x||`, from the coefficients.
    pub fn truncated_norm(&self, n: usize) -> Result<f64> {
        let mut acc = 0.0;
        for i in 1..=n {
            acc += self.coeff(i)?.norm_sqr();
        }
        Ok(acc.sqrt())
    }

    /// Smallest `n` with `tail_norm(n) < eps`, found by doubling and bisection
    /// over the nonincreasing tail.
    pub fn level_for_tolerance(&self, eps: f64) -> Result<usize> {
        if eps.is_nan() || eps <= 0.0 {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        let below = |n: usize| self.tail_norm(n).map(|t| t < eps);
        if below(0)? {
            return Ok(0);
        }
        let mut hi = 1usize;
        while !below(hi)? {
            if hi >= 1 << 62 {
                return Err(Error::Diagnostic(format!(
                    "{}: tail does not fall below {eps}",
                    self.label
                )));
            }
            hi *= 2;
        }
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if below(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

/// Euler-Maclaurin correction terms `-B_2k/(2k)! f^(2k-1)(a)` for
/// `f(t) = t^(-s)`, `k = 1..=4`. Their signs alternate starting positive.
fn euler_maclaurin_terms(s: f64, a: f64) -> [f64; 4] {
    // |B_2k| / (2k)! for k = 1..=4
    const COEFFS: [f64; 4] = [1.0 / 12.0, 1.0 / 720.0, 1.0 / 30240.0, 1.0 / 1209600.0];
    let mut out = [0.0; 4];
    let mut rising = s; // s (s+1) ... (s+2k-2)
    for (k, coeff) in COEFFS.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out[k] = sign * coeff * rising * a.powf(-s - (2 * k + 1) as f64);
        rising *= (s + (2 * k + 1) as f64) * (s + (2 * k + 2) as f64);
    }
    out
}

fn power_tail_parts(s: f64, n: usize) -> (f64, [f64; 4]) {
    // smallest terms first
    let direct: f64 = (n + 1..=n + POWER_DIRECT_TERMS)
        .rev()
        .map(|i| (i as f64).powf(-s))
        .sum();
    let a = (n + POWER_DIRECT_TERMS + 1) as f64;
    let head = direct + a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    (head, euler_maclaurin_terms(s, a))
}

/// Upper bound on `sum_{i>n} i^(-s)` for `s > 1`: the expansion truncated after
/// its third (positive) correction term.
fn power_tail_upper(s: f64, n: usize) -> f64 {
    let (head, t) = power_tail_parts(s, n);
    head + t[0] + t[1] + t[2]
}

/// Lower bound on `sum_{i>n} i^(-s)`: the expansion carried one (negative)
/// term further.
pub fn power_tail_lower(s: f64, n: usize) -> f64 {
    let (head, t) = power_tail_parts(s, n);
    head + t[0] + t[1] + t[2] + t[3]
}

/// The square-summable coefficient space over the union basis, with the
/// embedding of ladder elements.
#[derive(Debug, Clone, Default)]
pub struct HilbertContext {
    _private: (),
}

impl HilbertContext {
    pub fn new() -> Self {
        HilbertContext { _private: () }
    }

    /// The injective map from the union of levels into the coefficient space.
    pub fn embed(&self, x: &PhiElement) -> HilbertElement {
        embed_to_hilbert(x)
    }

    /// `<a, b>` over the coefficient space. Exact when at least one side is
    /// finitely supported; otherwise an infinite sum is needed and
    /// `InsufficientData` is returned (see [`HilbertContext::inner_product_bracket`]).
    pub fn inner_product(&self, a: &HilbertElement, b: &HilbertElement) -> Result<Complex64> {
        let len = match (a.support, b.support) {
            (Some(s), Some(t)) => s.min(t),
            (Some(s), None) | (None, Some(s)) => s,
            (None, None) => {
                return Err(Error::InsufficientData {
                    requested: usize::MAX,
                    available: a.prefix.len().min(b.prefix.len()),
                })
            }
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=len {
            acc += a.coeff(i)? * b.coeff(i)?.conj();
        }
        Ok(acc)
    }

    /// Truncated inner product over the first `n` coefficients together with
    /// the Cauchy-Schwarz bound `tail_a(n) * tail_b(n)` on the remainder.
    pub fn inner_product_bracket(
        &self,
        a: &HilbertElement,
        b: &HilbertElement,
        n: usize,
    ) -> Result<(Complex64, f64)> {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=n {
            acc += a.coeff(i)? * b.coeff(i)?.conj();
        }
        Ok((acc, a.tail_norm(n)? * b.tail_norm(n)?))
    }

    /// Whether the element lies in the image of the union of levels.
    pub fn contains_phi(&self, x: &HilbertElement) -> bool {
        x.is_finitely_supported()
    }
}

/// Embeds a ladder element as a finitely supported coefficient family.
pub fn embed_to_hilbert(x: &PhiElement) -> HilbertElement {
    let mut h = HilbertElement::finite(x.coeffs().to_vec());
    h.label = "embedded".into();
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn geometric_tail_examples() {
        let x = HilbertElement::geometric(0.5).unwrap();
        assert!((x.tail_norm(2).unwrap() - (1.0f64 / 12.0).sqrt()).abs() < 1e-15);
        // 10^4-term direct sum of 4^-(i-1) for i >= 3.
        let direct: f64 = (3..=10_000).map(|i| 0.25f64.powi(i - 1)).sum();
        assert!((x.tail_norm(2).unwrap() - direct.sqrt()).abs() < 1e-15);
        for n in 0..50 {
            assert!(x.tail_norm(n + 1).unwrap() <= x.tail_norm(n).unwrap());
        }
        assert!(HilbertElement::geometric(1.5).is_err());
        assert!(HilbertElement::geometric(0.0).is_err());
        assert!(HilbertElement::geometric(f64::NAN).is_err());
    }

    #[test]
    fn finite_tail_is_zero_past_support() {
        let x = HilbertElement::finite(vec![c(3.0), c(4.0)]);
        assert_eq!(x.tail_norm(2).unwrap(), 0.0);
        assert_eq!(x.tail_norm(100).unwrap(), 0.0);
        assert_eq!(x.norm(), 5.0);
        assert_eq!(x.tail_norm(1).unwrap(), 4.0);
    }

    #[test]
    fn power_law_bracket_holds() {
        for &p in &[0.6, 1.0, 2.5] {
            let s = 2.0 * p;
            let x = HilbertElement::power_law(p).unwrap();
            for n in [0usize, 1, 5, 30] {
                // Direct sum to 2*10^5 plus the integral lower bound for the rest.
                let m = 200_000usize;
                let direct: f64 = (n + 1..=m).rev().map(|i| (i as f64).powf(-s)).sum();
                let rest_lo = ((m + 1) as f64).powf(1.0 - s) / (s - 1.0);
                let rest_hi = (m as f64).powf(1.0 - s) / (s - 1.0);
                let upper = x.tail_norm(n).unwrap().powi(2);
                assert!(upper >= (direct + rest_lo) * (1.0 - 1e-12), "p={p} n={n}");
                assert!(upper <= (direct + rest_hi) * (1.0 + 1e-12), "p={p} n={n}");
                let lower = power_tail_lower(s, n);
                assert!(lower <= upper);
                assert!(upper - lower <= 1e-10 * upper, "p={p} n={n}");
            }
        }
        assert!(HilbertElement::power_law(0.5).is_err());
    }

    #[test]
    fn level_for_tolerance_is_minimal() {
        let x = HilbertElement::geometric(0.5).unwrap();
        for eps in [1e-3, 1e-6] {
            let n = x.level_for_tolerance(eps).unwrap();
            assert!(x.tail_norm(n).unwrap() < eps);
            assert!(x.tail_norm(n - 1).unwrap() >= eps);
        }
        let p = HilbertElement::power_law(1.0).unwrap();
        let n = p.level_for_tolerance(1e-3).unwrap();
        assert!(p.tail_norm(n).unwrap() < 1e-3);
        assert!(p.tail_norm(n - 1).unwrap() >= 1e-3);
    }

    #[test]
    fn prefix_without_extender_is_bounded() {
        let tail: TailRule = Arc::new(|n| {
            if n == 0 {
                2.0
            } else if n == 1 {
                1.0
            } else {
                0.5
            }
        });
        let x = HilbertElement::from_parts(
            "custom",
            vec![c(1.0)],
            tail,
            TailKind::UpperBound,
            Some(1),
            None,
        )
        .unwrap();
        assert!(matches!(x.coeff(2), Err(Error::InsufficientData { .. })));
        assert!(matches!(
            x.tail_norm(2),
            Err(Error::InsufficientData { .. })
        ));
        assert_eq!(x.tail_norm(1).unwrap(), 1.0);
    }

    #[test]
    fn from_parts_rejects_increasing_tail() {
        let tail: TailRule = Arc::new(|n| n as f64);
        let r =
            HilbertElement::from_parts("bad", vec![], tail, TailKind::UpperBound, Some(4), None);
        assert!(matches!(r, Err(Error::Diagnostic(_))));
    }

    #[test]
    fn completion_inner_product() {
        let ctx = HilbertContext::new();
        let a = HilbertElement::finite(vec![c(1.0), c(2.0)]);
        let b = HilbertElement::finite(vec![c(3.0), c(4.0)]);
        assert_eq!(ctx.inner_product(&a, &b).unwrap(), c(11.0));
        let g = HilbertElement::geometric(0.5).unwrap();
        assert_eq!(ctx.inner_product(&a, &g).unwrap(), c(2.0));
        assert!(ctx.inner_product(&g, &g).is_err());
        let (v, bound) = ctx.inner_product_bracket(&g, &g, 40).unwrap();
        assert!((v.re - 4.0 / 3.0).abs() <= bound + 1e-15);
        assert!(!ctx.contains_phi(&g));
        assert!(ctx.contains_phi(&a));
    }
}
