//! Dense linear algebra over Euclidean domains.
//!
//! The same elimination code runs over the integers (abelianizations of
//! cover presentations) and over Q[t, t^-1] (Alexander modules).

mod homology;
mod matrix;
mod smith;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub use homology::{
    homology_decomposition, integer_abelianization, kernel_basis, quotient_module,
    solve_in_image, solve_with, Abelianization, ModuleDecomposition,
};
pub use matrix::RingMatrix;
pub use smith::{smith_normal_form, SmithDecomposition, SmithOptions, DEFAULT_DEGREE_CAP};

/// A Euclidean domain with a distinguished unit-normal form.
///
/// Contract: `a.div_rem(b) = (q, r)` with `a = q*b + r` and either `r = 0`
/// or `r.size_cmp(b) == Less`; `a.unit_normalize() = (n, u)` with `a = u*n`,
/// `u` a unit, and normalizing `n` again yields `(n, 1)`.
pub trait EuclideanRing: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn div_rem(&self, other: &Self) -> Result<(Self, Self)>;
    fn unit_normalize(&self) -> (Self, Self);
    fn unit_inverse(&self) -> Option<Self>;
    /// Compares Euclidean sizes of two nonzero elements.
    fn size_cmp(&self, other: &Self) -> Ordering;

    fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }

    /// Measure checked against the elimination blow-up cap.
    fn blowup(&self) -> usize {
        0
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }
}

impl EuclideanRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_rem(&self, other: &Self) -> Result<(Self, Self)> {
        if Zero::is_zero(other) {
            return Err(Error::DivisionByZero);
        }
        // truncated division keeps |r| < |other|
        Ok(Integer::div_rem(self, other))
    }
    fn unit_normalize(&self) -> (Self, Self) {
        if self.is_negative() {
            (-self, BigInt::from(-1))
        } else {
            (self.clone(), One::one())
        }
    }
    fn unit_inverse(&self) -> Option<Self> {
        (self.magnitude().is_one()).then(|| self.clone())
    }
    fn size_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
}

impl EuclideanRing for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_rem(&self, other: &Self) -> Result<(Self, Self)> {
        LaurentPoly::div_rem(self, other)
    }
    fn unit_normalize(&self) -> (Self, Self) {
        let (canon, unit) = self.canonicalize();
        (canon.into_poly(), unit)
    }
    fn unit_inverse(&self) -> Option<Self> {
        LaurentPoly::unit_inverse(self)
    }
    fn size_cmp(&self, other: &Self) -> Ordering {
        self.span().cmp(&other.span())
    }
    fn is_unit(&self) -> bool {
        LaurentPoly::is_unit(self)
    }
    fn blowup(&self) -> usize {
        self.span().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_ring_contract() {
        let a = BigInt::from(-17);
        let b = BigInt::from(5);
        let (q, r) = EuclideanRing::div_rem(&a, &b).unwrap();
        assert_eq!(&q * &b + &r, a);
        assert_eq!(r.size_cmp(&b), Ordering::Less);
        assert_eq!(a.unit_normalize(), (BigInt::from(17), BigInt::from(-1)));
        assert!(BigInt::from(-1).is_unit());
        assert!(!BigInt::from(2).is_unit());
        assert!(EuclideanRing::div_rem(&a, &BigInt::from(0)).is_err());
    }

    #[test]
    fn laurent_ring_contract() {
        let a: LaurentPoly = "t^3 + 2*t^-1".parse().unwrap();
        let b: LaurentPoly = "3*t - 3".parse().unwrap();
        let (q, r) = EuclideanRing::div_rem(&a, &b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(r.size_cmp(&b), Ordering::Less);
        let (n, u) = b.unit_normalize();
        assert_eq!(n.to_string(), "t - 1");
        assert_eq!(&u * &n, b);
        assert_eq!(n.unit_normalize().1, LaurentPoly::one());
    }
}
