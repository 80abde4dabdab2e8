//! Betti numbers of finite cyclic covers from the Alexander module, and
//! the linear-versus-bounded growth verdict.
//!
//! For `H_1(M_∞) = Λ^r ⊕ Λ/(p_1) ⊕ ... ⊕ Λ/(p_k)` the Wang sequence gives
//!
//! ```text
//! β_1(M_n) = 1 + n r + Σ_j deg gcd(p_j, t^n - 1)
//! ```
//!
//! and since `t^n - 1` is squarefree, `deg gcd(p_j, t^n - 1)` is the sum of
//! `φ(d)` over the `d | n` with `Φ_d | p_j`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::covers::{cover_betti, cyclic_quotient};
use crate::error::{Error, Result};
use crate::laurent::{cyclotomic_divisors, euler_phi, gcd, t_minus_1_valuation, CanonicalPoly, LaurentPoly, Rational};
use crate::linalg::{ModuleDecomposition, SmithOptions};
use crate::presentation::{alexander_complex, infinite_cyclic_homology_with, GroupPresentation, ZMap};

/// `β_1` of the `n`-fold cyclic cover, computing each `gcd(p_j, t^n - 1)`
/// directly.
pub fn betti_of_cyclic_cover(dec: &ModuleDecomposition, n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "cover degree must be at least 1, got {n}"
        )));
    }
    let mut torsion = 0usize;
    for p in &dec.torsion_factors {
        let r = t_pow_minus_one_mod(n, p.as_poly())?;
        torsion += gcd(p.as_poly(), &r).degree().unwrap_or(0);
    }
    Ok(1 + n * dec.rank as u64 + torsion as u64)
}

/// `t^n - 1` reduced modulo the monic polynomial `p` (min exponent 0) by
/// square-and-multiply, so no intermediate exceeds `deg p`. Together with
/// `p` it generates the same ideal as `t^n - 1`.
fn t_pow_minus_one_mod(n: u64, p: &LaurentPoly) -> Result<LaurentPoly> {
    let (canon, _) = p.canonicalize();
    let deg = canon.degree().ok_or(Error::DivisionByZero)?;
    if deg == 0 {
        return Ok(LaurentPoly::zero());
    }
    let modulus: Vec<Rational> = (0..deg as i64).map(|e| canon.as_poly().coeff(e)).collect();
    let reduce = |mut v: Vec<Rational>| -> Vec<Rational> {
        // t^deg = -(modulus[0] + ... + modulus[deg-1] t^(deg-1))
        for k in (deg..v.len()).rev() {
            let c = std::mem::replace(&mut v[k], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, m) in modulus.iter().enumerate() {
                if !m.is_zero() {
                    v[k - deg + j] -= &c * m;
                }
            }
        }
        v.truncate(deg);
        v.resize(deg, Rational::zero());
        v
    };
    let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                v[i + j] += x * y;
            }
        }
        reduce(v)
    };
    let mut acc = reduce(vec![Rational::one()]);
    for bit in (0..64 - n.leading_zeros()).rev() {
        acc = mul(&acc, &acc);
        if n >> bit & 1 == 1 {
            let mut shifted = vec![Rational::zero()];
            shifted.extend(acc);
            acc = reduce(shifted);
        }
    }
    acc[0] -= Rational::one();
    Ok(LaurentPoly::from_coeffs(0, acc))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthKind {
    Linear { rate: usize },
    /// `β_1(M_n)` is periodic in `n` with this period and attains `max`
    /// exactly when the period divides `n`.
    Bounded { max: u64, period: u64 },
}

impl fmt::Display for GrowthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthKind::Linear { rate } => write!(f, "Linear (rate {rate})"),
            GrowthKind::Bounded { max, period } => write!(f, "Bounded (max {max}, period {period})"),
        }
    }
}

/// A torsion factor with the orders of its cyclotomic divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionWitness {
    pub factor: CanonicalPoly,
    pub cyclotomic_orders: BTreeSet<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthClassification {
    pub kind: GrowthKind,
    pub witnesses: Vec<TorsionWitness>,
}

impl GrowthClassification {
    pub fn is_linear(&self) -> bool {
        matches!(self.kind, GrowthKind::Linear { .. })
    }
}

pub fn classify(dec: &ModuleDecomposition) -> GrowthClassification {
    let witnesses: Vec<TorsionWitness> = dec
        .torsion_factors
        .iter()
        .map(|p| TorsionWitness {
            factor: p.clone(),
            cyclotomic_orders: cyclotomic_divisors(p),
        })
        .collect();
    let kind = if dec.rank > 0 {
        GrowthKind::Linear { rate: dec.rank }
    } else {
        let orders = witnesses.iter().flat_map(|w| w.cyclotomic_orders.iter().copied());
        let max = 1 + orders.clone().map(euler_phi).sum::<u64>();
        let period = orders.fold(1u64, |acc, d| acc.lcm(&d));
        GrowthKind::Bounded { max, period }
    };
    GrowthClassification { kind, witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionDiagnostic {
    /// Largest `k` with `Λ/((t-1)^k)` a summand; 0 without `(t-1)`-torsion.
    pub n: u32,
    pub has_t_minus_1_torsion: bool,
    /// The input is flagged as a closed 3-manifold group with `β_1 = 2`.
    pub equivalence_applies: bool,
    /// Set when the input is flagged but `(r > 0) ⟺ (N = 0)` fails.
    pub warning: Option<String>,
}

pub fn torsion_diagnostic(dec: &ModuleDecomposition, closed_3manifold_beta1_2: bool) -> TorsionDiagnostic {
    // the invariant factors form a divisibility chain, so the largest
    // (t-1)-adic valuation among them is the largest primary summand
    let n = dec
        .torsion_factors
        .iter()
        .map(|p| t_minus_1_valuation(p.as_poly()).expect("torsion factors are nonzero"))
        .max()
        .unwrap_or(0);
    let holds = (dec.rank > 0) == (n == 0);
    let warning = (closed_3manifold_beta1_2 && !holds).then(|| {
        format!(
            "input is flagged closed3manifold beta1=2 but rank {} and N = {n} violate (rank > 0 <=> N = 0)",
            dec.rank
        )
    });
    if let Some(w) = &warning {
        log::warn!("{w}");
    }
    TorsionDiagnostic {
        n,
        has_t_minus_1_torsion: n > 0,
        equivalence_applies: closed_3manifold_beta1_2,
        warning,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotCriterion {
    pub grows: bool,
    /// `(d, β_1(M_d))` for each cyclotomic order `d` dividing `Δ`.
    pub witnesses: Vec<(u64, u64)>,
}

/// Whether `β_1` of some cyclic branched-type cover exceeds 1, for the
/// module `Λ/(Δ)`.
pub fn knot_criterion(delta: &CanonicalPoly) -> Result<KnotCriterion> {
    if delta.is_zero() {
        return Err(Error::InvalidArgument(
            "the Alexander polynomial must be nonzero".into(),
        ));
    }
    let orders = cyclotomic_divisors(delta);
    let witnesses = orders
        .iter()
        .map(|&d| {
            let extra: u64 = orders
                .iter()
                .filter(|&&e| d % e == 0)
                .map(|&e| euler_phi(e))
                .sum();
            (d, 1 + extra)
        })
        .collect();
    Ok(KnotCriterion {
        grows: !orders.is_empty(),
        witnesses,
    })
}

/// `p^2 β²(x,y) + q^2 β²(y,x) - 2 p q · mixed`.
pub fn beta2_basis_change(p: i64, q: i64, beta2_xy: &Rational, beta2_yx: &Rational, mixed: &Rational) -> Rational {
    let p = Rational::from_integer(p.into());
    let q = Rational::from_integer(q.into());
    let two = Rational::from_integer(2.into());
    &p * &p * beta2_xy + &q * &q * beta2_yx - two * p * q * mixed
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: u64,
    pub betti_formula: u64,
    pub betti_oracle: Option<u64>,
}

pub fn growth_table(p: &GroupPresentation, psi: &ZMap, max_n: u64, verify: bool) -> Result<Vec<GrowthRow>> {
    growth_table_with(p, psi, max_n, verify, &SmithOptions::default())
}

/// Formula column for `n = 1..=max_n`; with `verify`, also the covers
/// oracle, where any disagreement is an error.
pub fn growth_table_with(
    p: &GroupPresentation,
    psi: &ZMap,
    max_n: u64,
    verify: bool,
    opts: &SmithOptions,
) -> Result<Vec<GrowthRow>> {
    if max_n < 1 {
        return Err(Error::InvalidArgument("max_n must be at least 1".into()));
    }
    let dec = infinite_cyclic_homology_with(p, psi, opts)?;
    let psi = psi.primitive();
    let mut rows = Vec::with_capacity(max_n as usize);
    for n in 1..=max_n {
        let betti_formula = betti_of_cyclic_cover(&dec, n)?;
        let betti_oracle = if verify {
            let ab = cover_betti(p, &cyclic_quotient(&psi, n)?)?;
            let oracle = ab.betti as u64;
            if oracle != betti_formula {
                return Err(mismatch(p, &psi, &dec, n, betti_formula, oracle));
            }
            Some(oracle)
        } else {
            None
        };
        rows.push(GrowthRow {
            n,
            betti_formula,
            betti_oracle,
        });
    }
    Ok(rows)
}

fn mismatch(p: &GroupPresentation, psi: &ZMap, dec: &ModuleDecomposition, n: u64, formula: u64, oracle: u64) -> Error {
    let mut details = format!("module: {dec}\n");
    if let Ok(c) = alexander_complex(p, psi) {
        details.push_str(&format!("d1 = {}d2 = {}", c.d1, c.d2));
    }
    if let Ok(q) = cyclic_quotient(psi, n) {
        if let Ok(cover) = crate::covers::reidemeister_schreier(p, &q) {
            details.push_str(&format!("cover exponent matrix = {}", cover.exponent_matrix()));
        }
    }
    Error::OracleMismatch {
        n,
        formula,
        oracle,
        details,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::cyclotomic;
    use crate::presentation::parse_presentation;
    use proptest::prelude::*;

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn torsion(rank: usize, factors: &[&str]) -> ModuleDecomposition {
        ModuleDecomposition::new(rank, factors.iter().map(|s| poly(s)))
    }

    #[test]
    fn reduced_power_matches_direct_gcd() {
        for f in ["t^2 - t + 1", "t^4 - t^2 + 1", "t^3 - 2*t + 5", "t^2 - 2*t + 1", "t + 1"] {
            let p = CanonicalPoly::new(&poly(f));
            for n in 1..=30 {
                let direct = gcd(p.as_poly(), &LaurentPoly::t_pow_minus_one(n as i64));
                let reduced = gcd(p.as_poly(), &t_pow_minus_one_mod(n, p.as_poly()).unwrap());
                assert_eq!(direct, reduced, "{f}, n = {n}");
            }
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(betti_of_cyclic_cover(&ModuleDecomposition::free(1), 7).unwrap(), 8);
        let heis = torsion(0, &["t^2 - 2*t + 1"]);
        for n in 1..=10 {
            assert_eq!(betti_of_cyclic_cover(&heis, n).unwrap(), 2);
        }
        let trefoil = torsion(0, &["t^2 - t + 1"]);
        assert_eq!(betti_of_cyclic_cover(&trefoil, 6).unwrap(), 3);
        assert_eq!(betti_of_cyclic_cover(&trefoil, 5).unwrap(), 1);
        assert!(betti_of_cyclic_cover(&trefoil, 0).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&ModuleDecomposition::free(1)).kind, GrowthKind::Linear { rate: 1 });
        assert_eq!(
            classify(&torsion(0, &["t^2 - 2*t + 1"])).kind,
            GrowthKind::Bounded { max: 2, period: 1 }
        );
        let c = classify(&torsion(0, &["t^2 - t + 1"]));
        assert_eq!(c.kind, GrowthKind::Bounded { max: 3, period: 6 });
        assert_eq!(c.kind.to_string(), "Bounded (max 3, period 6)");
        assert_eq!(c.witnesses[0].cyclotomic_orders, BTreeSet::from([6]));
        assert_eq!(classify(&ModuleDecomposition::free(0)).kind, GrowthKind::Bounded { max: 1, period: 1 });
    }

    #[test]
    fn diagnostic_examples() {
        let d = torsion_diagnostic(&torsion(0, &["t^2 - 2*t + 1"]), true);
        assert_eq!((d.n, d.has_t_minus_1_torsion, d.warning.is_none()), (2, true, true));
        assert_eq!(torsion_diagnostic(&ModuleDecomposition::free(1), true).n, 0);
        let d = torsion_diagnostic(&torsion(0, &["t^2 - t + 1"]), false);
        assert_eq!((d.n, d.has_t_minus_1_torsion), (0, false));
        // flagged inputs violating the equivalence get a warning
        assert!(torsion_diagnostic(&torsion(0, &["t^2 - t + 1"]), true).warning.is_some());
        assert!(torsion_diagnostic(&torsion(1, &["t - 1"]), true).warning.is_some());
        assert!(torsion_diagnostic(&torsion(1, &["t - 1"]), false).warning.is_none());
    }

    #[test]
    fn knot_examples() {
        let k = knot_criterion(&cyclotomic(6)).unwrap();
        assert!(k.grows);
        assert_eq!(k.witnesses, vec![(6, 3)]);
        assert!(!knot_criterion(&CanonicalPoly::new(&poly("t^2 - 3*t + 1"))).unwrap().grows);
        assert!(!knot_criterion(&CanonicalPoly::one()).unwrap().grows);
        assert!(knot_criterion(&CanonicalPoly::new(&LaurentPoly::zero())).is_err());
        // Φ2 Φ6: witnesses at 2 and 6, where both contribute
        let both = CanonicalPoly::new(&(cyclotomic(2).into_poly() * cyclotomic(6).into_poly()));
        assert_eq!(knot_criterion(&both).unwrap().witnesses, vec![(2, 2), (6, 4)]);
    }

    #[test]
    fn beta2_examples() {
        let r = |n: i64| Rational::from_integer(n.into());
        assert_eq!(beta2_basis_change(1, 0, &r(-5), &r(-1), &r(0)), r(-5));
        assert_eq!(beta2_basis_change(0, 1, &r(-5), &r(-1), &r(0)), r(-1));
        assert_eq!(beta2_basis_change(2, 3, &r(-5), &r(-1), &r(0)), r(-5 * 4 - 9));
        assert_eq!(beta2_basis_change(1, 1, &r(0), &r(0), &r(1)), r(-2));
    }

    #[test]
    fn tables_agree_with_the_oracle() {
        let f = parse_presentation("gens x y; map x=1").unwrap();
        let rows = growth_table(&f.presentation, f.map.as_ref().unwrap(), 4, true).unwrap();
        let got: Vec<(u64, u64, Option<u64>)> =
            rows.iter().map(|r| (r.n, r.betti_formula, r.betti_oracle)).collect();
        assert_eq!(got, vec![(1, 2, Some(2)), (2, 3, Some(3)), (3, 4, Some(4)), (4, 5, Some(5))]);
        assert!(growth_table(&f.presentation, f.map.as_ref().unwrap(), 0, false).is_err());
    }

    fn factor_strategy() -> impl Strategy<Value = LaurentPoly> {
        let cyclo = prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 8, 10, 12]);
        // monic integer cofactors keep the exact coefficients small
        (prop::collection::vec(cyclo, 0..3), prop::collection::vec(-1i64..=1, 0..2)).prop_map(|(ds, extra)| {
            let mut coeffs = extra;
            coeffs.push(1);
            let mut p = LaurentPoly::from_i64(0, &coeffs);
            for d in ds {
                p = p * cyclotomic(d).into_poly();
            }
            p
        })
    }

    proptest! {
        #[test]
        fn bounded_growth_is_periodic(fs in prop::collection::vec(factor_strategy(), 0..3)) {
            let dec = ModuleDecomposition::new(0, fs);
            let GrowthKind::Bounded { max, period } = classify(&dec).kind else {
                unreachable!()
            };
            for n in 1..=3 * period {
                prop_assert!(betti_of_cyclic_cover(&dec, n).unwrap() <= max);
            }
            for n in period + 1..=2 * period {
                prop_assert_eq!(
                    betti_of_cyclic_cover(&dec, n + period).unwrap(),
                    betti_of_cyclic_cover(&dec, n).unwrap()
                );
            }
            prop_assert_eq!(betti_of_cyclic_cover(&dec, period).unwrap(), max);
        }

        #[test]
        fn linear_growth_increments(rank in 1usize..4, fs in prop::collection::vec(factor_strategy(), 0..3)) {
            let dec = ModuleDecomposition::new(rank, fs);
            let bound: usize = dec.torsion_factors.iter().map(|p| p.degree().unwrap()).sum();
            for n in 1..=6u64 {
                let diff = betti_of_cyclic_cover(&dec, 2 * n).unwrap() as i64
                    - betti_of_cyclic_cover(&dec, n).unwrap() as i64;
                let excess = diff - (n * rank as u64) as i64;
                prop_assert!((0..=bound as i64).contains(&excess));
                if dec.torsion_factors.is_empty() {
                    prop_assert_eq!(excess, 0);
                }
            }
        }

        #[test]
        fn classification_ignores_units_and_order(
            fs in prop::collection::vec(factor_strategy(), 0..3),
            shift in -4i64..4,
            scale in 1i64..5,
        ) {
            let dec = ModuleDecomposition::new(0, fs.clone());
            let rescaled: Vec<LaurentPoly> = fs
                .iter()
                .rev()
                .map(|p| p.shift(shift).scale(&Rational::from_integer((-scale).into())))
                .collect();
            let other = ModuleDecomposition::new(0, rescaled);
            prop_assert_eq!(classify(&dec).kind, classify(&other).kind);
        }

        #[test]
        fn cyclotomic_and_gcd_routes_agree(fs in prop::collection::vec(factor_strategy(), 0..3), n in 1u64..=24) {
            let dec = ModuleDecomposition::new(0, fs);
            let via_orders: u64 = dec
                .torsion_factors
                .iter()
                .flat_map(cyclotomic_divisors)
                .filter(|d| n % d == 0)
                .map(euler_phi)
                .sum();
            prop_assert_eq!(betti_of_cyclic_cover(&dec, n).unwrap(), 1 + via_orders);
        }
    }
}
