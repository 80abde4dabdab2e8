//! Exact arithmetic in the Laurent polynomial ring Q[t, t^-1].
//!
//! Elements are stored densely as a lowest exponent plus a coefficient
//! vector whose first and last entries are nonzero. Units of the ring are
//! the nonzero monomials `c * t^k`, so every nonzero element has a unique
//! associate that is an honest polynomial with nonzero constant term and
//! leading coefficient one; that associate is [`CanonicalPoly`].

mod cyclotomic;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic, cyclotomic_divisors, divisors, euler_phi};
pub use num_rational::BigRational as Rational;

/// An element of Q[t, t^-1].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rational>,
}

/// A monic polynomial with nonzero constant term, or zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalPoly(LaurentPoly);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: i64) -> Self {
        &Self::t_pow(n) - &Self::one()
    }

    /// Builds `sum_i coeffs[i] * t^(low + i)`, trimming zero ends.
    pub fn from_coeffs(low: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            low,
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Nonzero monomials are exactly the units of the ring.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// `max_exp - min_exp`; this is the degree of the canonical associate.
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // Horner on the polynomial part, then the t^low factor.
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.low >= 0 {
            acc * num_traits::pow(x.clone(), self.low as usize)
        } else {
            acc / num_traits::pow(x.clone(), (-self.low) as usize)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a unit `c * t^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit()
            .then(|| Self::monomial(self.coeffs[0].recip(), -self.low))
    }

    /// Splits `self = unit * canonical`.
    pub fn canonicalize(&self) -> (CanonicalPoly, LaurentPoly) {
        match self.leading_coeff() {
            None => (CanonicalPoly(Self::zero()), Self::one()),
            Some(lead) => {
                let unit = Self::monomial(lead.clone(), self.low);
                let inv = lead.recip();
                let canon = LaurentPoly {
                    low: 0,
                    coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
                };
                (CanonicalPoly(canon), unit)
            }
        }
    }

    /// Euclidean division in Q[t, t^-1] with respect to the span function:
    /// `self = q * other + r` with `span(r) < span(other)` or `r = 0`.
    pub fn div_rem(&self, other: &Self) -> Result<(Self, Self)> {
        let (a, ua) = self.canonicalize();
        let (b, ub) = other.canonicalize();
        let (q, r) = divmod(&a, &b)?;
        let ub_inv = ub.unit_inverse().expect("canonical unit is a monomial");
        Ok((&(&ua * &q) * &ub_inv, &ua * &r))
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }
}

/// Division with remainder of canonical polynomials, as ordinary
/// polynomials in Q[t].
pub fn divmod(a: &CanonicalPoly, b: &CanonicalPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    poly_divmod(a.as_poly(), b.as_poly())
}

/// Schoolbook division for elements with no negative exponents.
fn poly_divmod(a: &LaurentPoly, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    debug_assert!(a.low >= 0 && b.low >= 0);
    if a.is_zero() {
        return Ok((LaurentPoly::zero(), LaurentPoly::zero()));
    }
    let a_deg = a.max_exp().unwrap() as usize;
    let b_deg = b.max_exp().unwrap() as usize;
    if a_deg < b_deg {
        return Ok((LaurentPoly::zero(), a.clone()));
    }
    let mut rem: Vec<Rational> = (0..=a_deg as i64).map(|e| a.coeff(e)).collect();
    let divisor: Vec<Rational> = (0..=b_deg as i64).map(|e| b.coeff(e)).collect();
    let lead_inv = divisor[b_deg].recip();
    let mut quot = vec![Rational::zero(); a_deg - b_deg + 1];
    for k in (0..=a_deg - b_deg).rev() {
        let c = &rem[k + b_deg] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, d) in divisor.iter().enumerate() {
            if !d.is_zero() {
                rem[k + j] -= &c * d;
            }
        }
        quot[k] = c;
    }
    rem.truncate(b_deg);
    Ok((
        LaurentPoly::from_coeffs(0, quot),
        LaurentPoly::from_coeffs(0, rem),
    ))
}

/// Monic generator of the ideal `(a, b)`; `gcd(0, 0) = 0`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> CanonicalPoly {
    let (mut x, _) = a.canonicalize();
    let (mut y, _) = b.canonicalize();
    while !y.is_zero() {
        let (_, r) = divmod(&x, &y).expect("divisor is nonzero");
        x = y;
        y = r.canonicalize().0;
    }
    x
}

/// Largest `k` such that `(t - 1)^k` divides `p`.
pub fn t_minus_1_valuation(p: &LaurentPoly) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::InfiniteValuation);
    }
    let one = Rational::one();
    let mut q = p.canonicalize().0.into_poly();
    let mut k = 0;
    while q.eval(&one).is_zero() {
        q = synthetic_divide_by_t_minus_1(&q);
        k += 1;
    }
    Ok(k)
}

/// Quotient of a polynomial (min exponent 0) vanishing at 1 by `t - 1`.
fn synthetic_divide_by_t_minus_1(p: &LaurentPoly) -> LaurentPoly {
    let deg = p.max_exp().unwrap() as usize;
    let mut out = vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for e in (1..=deg).rev() {
        carry += p.coeff(e as i64);
        out[e - 1] = carry.clone();
    }
    LaurentPoly::from_coeffs(0, out)
}

impl CanonicalPoly {
    pub fn new(p: &LaurentPoly) -> Self {
        p.canonicalize().0
    }

    pub fn one() -> Self {
        CanonicalPoly(LaurentPoly::one())
    }

    pub fn as_poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Degree as a polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.span()
    }
}

impl fmt::Display for CanonicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for CanonicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalPoly({})", self.0)
    }
}

impl From<CanonicalPoly> for LaurentPoly {
    fn from(c: CanonicalPoly) -> Self {
        c.0
    }
}

impl Ord for CanonicalPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.coeffs.iter().rev().cmp(other.0.coeffs.iter().rev()))
    }
}

impl PartialOrd for CanonicalPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_impl(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.max_exp().unwrap().max(b.max_exp().unwrap());
    let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.low - low) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.low - low) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::from_coeffs(low, coeffs)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_impl(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_impl(self, rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(Rational::from_integer(BigInt::from(c)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (exp, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if exp == 0 {
                write!(f, "{}", mag)?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", mag)?;
            }
            match exp {
                1 => f.write_str("t")?,
                _ => write!(f, "t^{}", exp)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}
