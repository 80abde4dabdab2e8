//! Free differential calculus.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::word::{Letter, Word};
use crate::laurent::{LaurentPoly, Rational};

/// Element of the rational group ring of a free group, keyed by reduced
/// words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, Rational>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: &Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, Rational::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms
            .get(&w.free_reduce())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Adds `c * w`.
    pub fn add_term(&mut self, w: &Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = w.free_reduce();
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (w, d) in &self.terms {
            out.add_term(w, d * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(&u.concat(v), a * b);
            }
        }
        out
    }

    /// Renders with generator names, e.g. `1 - x y x^-1`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let body = w.display_with(names).to_string();
            if mag.is_one() {
                s.push_str(&body);
            } else if w.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                s.push_str(&format!("{mag}*{body}"));
            }
        }
        s
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = self.terms.keys().map(Word::generator_bound).max().unwrap_or(0);
        let names: Vec<String> = (1..=bound).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// `∂w/∂x_g`, via `∂(uv) = ∂u + u ∂v`, `∂x = 1`, `∂x^-1 = -x^-1`.
pub fn fox_derivative(w: &Word, g: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::empty();
    for &l in w.letters() {
        if l.generator == g {
            if l.inverse {
                let mut p = prefix.clone();
                p.push_reduced(l);
                out.add_term(&p, -Rational::one());
            } else {
                out.add_term(&prefix, Rational::one());
            }
        }
        prefix.push_reduced(l);
    }
    out
}

/// Sends each word `w` to `t^{ψ(w)}` and extends linearly.
pub fn specialize(e: &GroupRingElement, psi: &[i64]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (w, c) in e.terms() {
        out = out + LaurentPoly::monomial(c.clone(), w.image(psi));
    }
    out
}

/// `specialize(fox_derivative(w, g), psi)` computed in one pass over `w`.
pub fn fox_specialized(w: &Word, g: usize, psi: &[i64]) -> LaurentPoly {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    let mut height = 0i64;
    for &Letter { generator, inverse } in w.letters() {
        let step = psi[generator];
        if generator == g {
            if inverse {
                *counts.entry(height - step).or_default() -= 1;
            } else {
                *counts.entry(height).or_default() += 1;
            }
        }
        height += if inverse { -step } else { step };
    }
    counts
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .fold(LaurentPoly::zero(), |acc, (e, c)| {
            acc + LaurentPoly::monomial(Rational::from_integer(c.into()), e)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn commutator() -> Word {
        Word::from_signed(&[1, 2, -1, -2])
    }

    #[test]
    fn commutator_derivatives() {
        let dx = fox_derivative(&commutator(), 0);
        let mut expect = GroupRingElement::word(&Word::empty());
        expect.add_term(&Word::from_signed(&[1, 2, -1]), -Rational::one());
        assert_eq!(dx, expect);
        assert_eq!(dx.display_with(&names()), "1 - x y x^-1");

        let dy = fox_derivative(&commutator(), 1);
        assert_eq!(dy.display_with(&names()), "x - x y x^-1 y^-1");
        assert!(fox_derivative(&Word::empty(), 0).is_zero());
    }

    #[test]
    fn specialization_examples() {
        let psi = [1, 0];
        assert!(specialize(&fox_derivative(&commutator(), 0), &psi).is_zero());
        assert_eq!(
            specialize(&fox_derivative(&commutator(), 1), &psi),
            "t - 1".parse().unwrap()
        );
        assert!(specialize(&GroupRingElement::zero(), &psi).is_zero());
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..16)
            .prop_map(|v| Word::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
    }

    proptest! {
        #[test]
        fn fundamental_identity(w in word_strategy(), psi in prop::collection::vec(-3i64..=3, 3)) {
            let mut lhs = LaurentPoly::zero();
            for g in 0..3 {
                lhs = lhs + specialize(&fox_derivative(&w, g), &psi) * LaurentPoly::t_pow_minus_one(psi[g]);
            }
            prop_assert_eq!(lhs, LaurentPoly::t_pow_minus_one(w.image(&psi)));
        }

        #[test]
        fn derivative_ignores_reduction(w in word_strategy()) {
            let r = w.free_reduce();
            prop_assert_eq!(r.free_reduce(), r.clone());
            for g in 0..3 {
                prop_assert_eq!(fox_derivative(&w, g), fox_derivative(&r, g));
            }
        }

        #[test]
        fn one_pass_matches_group_ring(w in word_strategy(), psi in prop::collection::vec(-3i64..=3, 3)) {
            for g in 0..3 {
                prop_assert_eq!(fox_specialized(&w, g, &psi), specialize(&fox_derivative(&w, g), &psi));
            }
        }

        #[test]
        fn leibniz_rule(u in word_strategy(), v in word_strategy()) {
            for g in 0..3 {
                let lhs = fox_derivative(&u.concat(&v), g);
                let rhs = fox_derivative(&u, g).add(&GroupRingElement::word(&u).mul(&fox_derivative(&v, g)));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
