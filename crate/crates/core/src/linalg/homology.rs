use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{smith_normal_form, EuclideanRing, RingMatrix, SmithDecomposition, SmithOptions};
use crate::error::{Error, Result};
use crate::laurent::{CanonicalPoly, LaurentPoly};

/// A finitely generated Q[t, t^-1]-module `Λ^rank ⊕ Λ/(p_1) ⊕ ... ⊕ Λ/(p_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecomposition {
    pub rank: usize,
    /// Non-unit invariant factors, each dividing the next.
    pub torsion_factors: Vec<CanonicalPoly>,
}

impl ModuleDecomposition {
    /// Canonicalizes the factors and drops units.
    pub fn new(rank: usize, factors: impl IntoIterator<Item = LaurentPoly>) -> Self {
        let torsion_factors = factors
            .into_iter()
            .map(|p| CanonicalPoly::new(&p))
            .filter(|p| !p.is_one() && !p.is_zero())
            .collect();
        ModuleDecomposition {
            rank,
            torsion_factors,
        }
    }

    pub fn free(rank: usize) -> Self {
        ModuleDecomposition {
            rank,
            torsion_factors: Vec::new(),
        }
    }
}

impl fmt::Display for ModuleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Λ".to_string()),
            r => parts.push(format!("Λ^{r}")),
        }
        parts.extend(self.torsion_factors.iter().map(|p| format!("Λ/({p})")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

/// Integer abelianization `Z^betti ⊕ Z/d_1 ⊕ ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Columns freely generating `{v : M v = 0}`.
pub fn kernel_basis<R: EuclideanRing>(
    m: &RingMatrix<R>,
    opts: &SmithOptions,
) -> Result<RingMatrix<R>> {
    let opts = SmithOptions {
        transforms: true,
        ..opts.clone()
    };
    let snf = smith_normal_form(m, &opts)?;
    let v = snf.right.as_ref().expect("transforms requested");
    let s = snf.rank();
    let columns = (s..m.cols()).map(|j| v.column(j)).collect();
    Ok(RingMatrix::from_columns(columns, m.cols()))
}

/// Some `x` with `B x = v`, or `None` if `v` is outside the column span.
pub fn solve_in_image<R: EuclideanRing>(
    b: &RingMatrix<R>,
    v: &[R],
    opts: &SmithOptions,
) -> Result<Option<Vec<R>>> {
    let opts = SmithOptions {
        transforms: true,
        ..opts.clone()
    };
    let snf = smith_normal_form(b, &opts)?;
    solve_with(&snf, v)
}

/// [`solve_in_image`] against a precomputed decomposition of `B`.
pub fn solve_with<R: EuclideanRing>(
    snf: &SmithDecomposition<R>,
    v: &[R],
) -> Result<Option<Vec<R>>> {
    let (Some(u), Some(right)) = (&snf.left, &snf.right) else {
        return Err(Error::InvalidArgument(
            "solving requires the Smith transforms".into(),
        ));
    };
    // B x = v  <=>  D (V^-1 x) = U v
    let uv = u.mul_vec(v)?;
    let s = snf.rank();
    if uv[s..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut y = vec![R::zero(); snf.cols];
    for (i, d) in snf.invariant_factors.iter().enumerate() {
        let (q, r) = uv[i].div_rem(d)?;
        if !r.is_zero() {
            return Ok(None);
        }
        y[i] = q;
    }
    Ok(Some(right.mul_vec(&y)?))
}

/// Structure of `ker d1 / im d2` as `(rank, non-unit invariant factors)`.
pub fn quotient_module<R: EuclideanRing>(
    d2: &RingMatrix<R>,
    d1: &RingMatrix<R>,
    opts: &SmithOptions,
) -> Result<(usize, Vec<R>)> {
    if d1.cols() != d2.rows() {
        return Err(Error::Dimension(format!(
            "d1 is {}x{} but d2 is {}x{}",
            d1.rows(),
            d1.cols(),
            d2.rows(),
            d2.cols()
        )));
    }
    let composite = d1.mul(d2)?;
    for i in 0..composite.rows() {
        for j in 0..composite.cols() {
            if !composite[(i, j)].is_zero() {
                return Err(Error::NotChainComplex { row: i, col: j });
            }
        }
    }

    let kernel = kernel_basis(d1, opts)?;
    let kernel_snf = smith_normal_form(
        &kernel,
        &SmithOptions {
            transforms: true,
            ..opts.clone()
        },
    )?;
    let mut coords = Vec::with_capacity(d2.cols());
    for j in 0..d2.cols() {
        let col = d2.column(j);
        let x = solve_with(&kernel_snf, &col)?.ok_or_else(|| {
            Error::InvalidArgument(format!("boundary column {j} is not a cycle"))
        })?;
        coords.push(x);
    }
    let relations = RingMatrix::from_columns(coords, kernel.cols());
    let snf = smith_normal_form(
        &relations,
        &SmithOptions {
            transforms: false,
            ..opts.clone()
        },
    )?;
    let rank = kernel.cols() - snf.rank();
    Ok((rank, snf.nonunit_factors().cloned().collect()))
}

/// `ker d1 / im d2` over Λ.
pub fn homology_decomposition(
    d2: &RingMatrix<LaurentPoly>,
    d1: &RingMatrix<LaurentPoly>,
    opts: &SmithOptions,
) -> Result<ModuleDecomposition> {
    let (rank, factors) = quotient_module(d2, d1, opts)?;
    Ok(ModuleDecomposition::new(rank, factors))
}

/// Abelianization of a group from its relator-exponent matrix
/// (relators x generators).
pub fn integer_abelianization(
    m: &RingMatrix<BigInt>,
    generators: usize,
) -> Result<Abelianization> {
    if m.cols() != generators {
        return Err(Error::Dimension(format!(
            "exponent matrix has {} columns for {generators} generators",
            m.cols()
        )));
    }
    let snf = smith_normal_form(
        m,
        &SmithOptions {
            transforms: false,
            degree_cap: None,
        },
    )?;
    Ok(Abelianization {
        betti: generators - snf.rank(),
        torsion: snf
            .invariant_factors
            .into_iter()
            .filter(|d| !d.is_one())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(rows: &[&[&str]]) -> RingMatrix<LaurentPoly> {
        RingMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
                .collect(),
        )
    }

    fn zm(rows: &[&[i64]], cols: usize) -> RingMatrix<BigInt> {
        RingMatrix::from_rows_with_cols(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    fn opts() -> SmithOptions {
        SmithOptions::default()
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&lm(&[&["t - 1", "0", "0"]]), &opts()).unwrap();
        assert_eq!(k, lm(&[&["0", "0"], &["1", "0"], &["0", "1"]]));
        let k = kernel_basis(&RingMatrix::<LaurentPoly>::identity(3), &opts()).unwrap();
        assert_eq!(k.cols(), 0);
        let k = kernel_basis(&lm(&[&["0"]]), &opts()).unwrap();
        assert_eq!(k, lm(&[&["1"]]));
    }

    #[test]
    fn kernel_of_mixed_row() {
        // d1 of a presentation with map (2, 3)
        let d1 = lm(&[&["t^2 - 1", "t^3 - 1"]]);
        let k = kernel_basis(&d1, &opts()).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(d1.mul(&k).unwrap().is_zero());
        // (t^3-1)/(t-1), -(t^2-1)/(t-1) generates, up to a unit
        let col = k.column(0);
        let expected = ["t^2 + t + 1", "-t - 1"].map(|s| s.parse::<LaurentPoly>().unwrap());
        let ratio = col[0].div_rem(&expected[0]).unwrap();
        assert!(ratio.1.is_zero() && ratio.0.is_unit());
        assert_eq!(&ratio.0 * &expected[1], col[1]);
    }

    #[test]
    fn solve_examples() {
        let b = lm(&[&["t - 1"], &["0"]]);
        let v: Vec<LaurentPoly> = vec!["t^2 - 1".parse().unwrap(), LaurentPoly::zero()];
        assert_eq!(
            solve_in_image(&b, &v, &opts()).unwrap(),
            Some(vec!["t + 1".parse().unwrap()])
        );
        let v = vec![LaurentPoly::one(), LaurentPoly::zero()];
        assert_eq!(solve_in_image(&b, &v, &opts()).unwrap(), None);
        let id = RingMatrix::<LaurentPoly>::identity(2);
        let v: Vec<LaurentPoly> = vec!["3*t^-4".parse().unwrap(), "t + 7".parse().unwrap()];
        assert_eq!(solve_in_image(&id, &v, &opts()).unwrap(), Some(v.clone()));
    }

    #[test]
    fn homology_examples() {
        let d1 = lm(&[&["t - 1", "0"]]);
        let d2 = RingMatrix::from_rows_with_cols(vec![vec![]; 2], 0);
        assert_eq!(
            homology_decomposition(&d2, &d1, &opts()).unwrap(),
            ModuleDecomposition::free(1)
        );

        let d1 = lm(&[&["t - 1", "0", "0"]]);
        let d2 = lm(&[&["0", "0", "0"], &["t - 1", "0", "0"], &["-1", "t - 1", "0"]]);
        let dec = homology_decomposition(&d2, &d1, &opts()).unwrap();
        assert_eq!(dec.rank, 0);
        assert_eq!(dec.torsion_factors.len(), 1);
        assert_eq!(dec.torsion_factors[0].to_string(), "t^2 - 2*t + 1");
        assert_eq!(dec.to_string(), "Λ/(t^2 - 2*t + 1)");

        let g = 3;
        let d2 = RingMatrix::<LaurentPoly>::identity(g);
        let d1 = RingMatrix::zeros(1, g);
        assert_eq!(
            homology_decomposition(&d2, &d1, &opts()).unwrap(),
            ModuleDecomposition::free(0)
        );
        let d2 = RingMatrix::<LaurentPoly>::zeros(g, 0);
        assert_eq!(
            homology_decomposition(&d2, &d1, &opts()).unwrap(),
            ModuleDecomposition::free(g)
        );
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = lm(&[&["t - 1", "0"]]);
        let d2 = lm(&[&["1"], &["0"]]);
        assert_eq!(
            homology_decomposition(&d2, &d1, &opts()),
            Err(Error::NotChainComplex { row: 0, col: 0 })
        );
    }

    #[test]
    fn abelianization_examples() {
        let heis = zm(&[&[0, 0, -1], &[0, 0, 0], &[0, 0, 0]], 3);
        let ab = integer_abelianization(&heis, 3).unwrap();
        assert_eq!(ab, Abelianization { betti: 2, torsion: vec![] });
        let ab = integer_abelianization(&zm(&[], 3), 3).unwrap();
        assert_eq!(ab.betti, 3);
        let ab = integer_abelianization(&zm(&[&[2]], 1), 1).unwrap();
        assert_eq!(ab, Abelianization { betti: 0, torsion: vec![BigInt::from(2)] });
        assert_eq!(ab.to_string(), "Z/2");
    }

    /// Rank over Q by fraction-field Gaussian elimination.
    fn rational_rank(m: &RingMatrix<BigInt>) -> usize {
        use crate::laurent::Rational;
        use num_traits::Zero;
        let mut a: Vec<Vec<Rational>> = m.map(|x| Rational::from_integer(x.clone()));
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[rank][col];
                    for c in col..m.cols() {
                        let d = &f * &a[rank][c];
                        a[r][c] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn abelianization_betti_matches_rational_rank(
            rows in 0usize..6,
            cols in 1usize..6,
            seed in prop::collection::vec(-4i64..=4, 36),
        ) {
            let m = RingMatrix::from_rows_with_cols(
                (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 6 + j])).collect()).collect(),
                cols,
            );
            let ab = integer_abelianization(&m, cols).unwrap();
            prop_assert_eq!(ab.betti, cols - rational_rank(&m));
        }

        #[test]
        fn homology_fits_in_the_kernel(
            psi in prop::collection::vec(-2i64..=2, 3),
            mix in prop::collection::vec(prop::collection::vec(-2i64..=2, 1..3), 6),
        ) {
            prop_assume!(psi.iter().any(|&x| x != 0));
            let d1 = RingMatrix::from_rows(vec![psi.iter().map(|&e| LaurentPoly::t_pow_minus_one(e)).collect()]);
            let kernel = kernel_basis(&d1, &opts()).unwrap();
            // d2 = K X lands in ker d1 by construction
            let x = RingMatrix::from_rows(
                (0..kernel.cols())
                    .map(|i| (0..2).map(|j| LaurentPoly::from_i64(0, &mix[i * 2 + j])).collect())
                    .collect(),
            );
            let d2 = RingMatrix::from_rows_with_cols(
                (0..3).map(|i| kernel.mul(&x).unwrap().row(i).to_vec()).collect(),
                2,
            );
            let dec = homology_decomposition(&d2, &d1, &opts()).unwrap();
            prop_assert!(dec.rank + dec.torsion_factors.len() <= kernel.cols());
        }
    }
}
