use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The exact value `q * sqrt(2 pi)` with rational `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SqrtTwoPiScalar(pub BigRational);

impl SqrtTwoPiScalar {
    pub fn zero() -> Self {
        SqrtTwoPiScalar(BigRational::zero())
    }

    pub fn from_integer(q: i64) -> Self {
        SqrtTwoPiScalar(BigRational::from_integer(q.into()))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN) * (2.0 * PI).sqrt()
    }

    pub fn scale(&self, factor: &BigRational) -> SqrtTwoPiScalar {
        SqrtTwoPiScalar(&self.0 * factor)
    }
}

impl Add for &SqrtTwoPiScalar {
    type Output = SqrtTwoPiScalar;

    fn add(self, rhs: &SqrtTwoPiScalar) -> SqrtTwoPiScalar {
        SqrtTwoPiScalar(&self.0 + &rhs.0)
    }
}

impl fmt::Display for SqrtTwoPiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*sqrt(2pi)", self.0)
    }
}

/// The exact value `coeff * sqrt(radicand)` with rational parts and
/// `radicand >= 0`. Perfect-square radicands are folded into the coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSqrt {
    coeff: BigRational,
    radicand: BigRational,
}

impl RationalSqrt {
    pub fn new(coeff: BigRational, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "radicand must be nonnegative");
        RationalSqrt { coeff, radicand }.simplified()
    }

    pub fn rational(coeff: BigRational) -> Self {
        RationalSqrt::new(coeff, BigRational::one())
    }

    pub fn one() -> Self {
        RationalSqrt::rational(BigRational::one())
    }

    pub fn zero() -> Self {
        RationalSqrt::rational(BigRational::zero())
    }

    /// `1 / sqrt(q)` for positive `q`.
    pub fn inv_sqrt(q: &BigRational) -> Self {
        assert!(q.is_positive(), "inv_sqrt needs a positive argument");
        RationalSqrt::new(BigRational::one(), q.recip())
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    /// `Some(q)` when the value is the rational `q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.radicand.is_one().then_some(&self.coeff)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    fn simplified(self) -> Self {
        if self.coeff.is_zero() || self.radicand.is_zero() {
            return RationalSqrt {
                coeff: BigRational::zero(),
                radicand: BigRational::one(),
            };
        }
        match (
            exact_sqrt(self.radicand.numer()),
            exact_sqrt(self.radicand.denom()),
        ) {
            (Some(n), Some(d)) => RationalSqrt {
                coeff: self.coeff * BigRational::new(n, d),
                radicand: BigRational::one(),
            },
            _ => self,
        }
    }
}

impl Mul for &RationalSqrt {
    type Output = RationalSqrt;

    fn mul(self, rhs: &RationalSqrt) -> RationalSqrt {
        RationalSqrt::new(&self.coeff * &rhs.coeff, &self.radicand * &rhs.radicand)
    }
}

impl fmt::Display for RationalSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::poly::rational;

    #[test]
    fn perfect_squares_fold() {
        let v = RationalSqrt::new(rational(1, 1), rational(4, 9));
        assert_eq!(v.as_rational(), Some(&rational(2, 3)));
        let w = RationalSqrt::inv_sqrt(&rational(2, 1));
        assert_eq!(w.as_rational(), None);
        assert_eq!((&w * &w).as_rational(), Some(&rational(1, 2)));
        assert!((w.to_f64() - 0.5f64.sqrt()).abs() < 1e-16);
        assert_eq!(w.to_string(), "1*sqrt(1/2)");
    }

    #[test]
    fn sqrt_two_pi_value() {
        let v = SqrtTwoPiScalar::from_integer(1);
        assert!((v.to_f64() - 2.5066282746310002).abs() < 1e-15);
        assert_eq!(v.to_string(), "1*sqrt(2pi)");
    }
}
