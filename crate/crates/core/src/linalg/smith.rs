//! Smith normal form by pivoted elimination.
//!
//! The pivot is always the nonzero entry of least Euclidean size in the
//! active submatrix (ties: lowest row, then lowest column), so the output
//! is a deterministic function of the input.

use super::{EuclideanRing, RingMatrix};
use crate::error::{Error, Result};

/// Default cap on the degree span of Laurent entries during elimination.
pub const DEFAULT_DEGREE_CAP: usize = 512;

#[derive(Clone, Debug)]
pub struct SmithOptions {
    /// Accumulate the unimodular transforms `U`, `V`.
    pub transforms: bool,
    /// Abort when an entry's [`EuclideanRing::blowup`] exceeds this.
    pub degree_cap: Option<usize>,
}

impl Default for SmithOptions {
    fn default() -> Self {
        SmithOptions {
            transforms: true,
            degree_cap: Some(DEFAULT_DEGREE_CAP),
        }
    }
}

impl SmithOptions {
    pub fn factors_only() -> Self {
        SmithOptions {
            transforms: false,
            ..Self::default()
        }
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = Some(cap);
        self
    }
}

/// `U * M * V = diag(d_1, ..., d_s, 0, ...)` with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<R: EuclideanRing> {
    /// Nonzero, unit-normalized diagonal entries.
    pub invariant_factors: Vec<R>,
    pub rows: usize,
    pub cols: usize,
    pub left: Option<RingMatrix<R>>,
    pub right: Option<RingMatrix<R>>,
}

impl<R: EuclideanRing> SmithDecomposition<R> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The `rows x cols` diagonal matrix `D`.
    pub fn diagonal(&self) -> RingMatrix<R> {
        let mut d = RingMatrix::zeros(self.rows, self.cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }

    pub fn nonunit_factors(&self) -> impl Iterator<Item = &R> {
        self.invariant_factors.iter().filter(|d| !d.is_unit())
    }
}

pub fn smith_normal_form<R: EuclideanRing>(
    m: &RingMatrix<R>,
    opts: &SmithOptions,
) -> Result<SmithDecomposition<R>> {
    let mut elim = Elimination {
        a: m.clone(),
        u: opts.transforms.then(|| RingMatrix::identity(m.rows())),
        v: opts.transforms.then(|| RingMatrix::identity(m.cols())),
        cap: opts.degree_cap,
    };
    elim.check_cap((0..m.rows()).flat_map(|i| m.row(i).iter()))?;
    let rows = m.rows();
    let cols = m.cols();
    let mut factors = Vec::new();

    let mut k = 0;
    while k < rows.min(cols) {
        let Some(pos) = elim.min_pivot(k) else {
            break;
        };
        elim.place(k, pos);
        loop {
            if elim.clear_row_and_column(k)? {
                let pos = elim.min_pivot(k).expect("a nonzero remainder exists");
                elim.place(k, pos);
                continue;
            }
            if let Some(i) = elim.non_divisible_row(k) {
                elim.add_row(k, i, &R::one())?;
                continue;
            }
            break;
        }
        elim.normalize_pivot(k);
        factors.push(elim.a[(k, k)].clone());
        k += 1;
    }

    log::trace!("smith normal form of {rows}x{cols}: {} factors", factors.len());
    Ok(SmithDecomposition {
        invariant_factors: factors,
        rows,
        cols,
        left: elim.u,
        right: elim.v,
    })
}

struct Elimination<R> {
    a: RingMatrix<R>,
    u: Option<RingMatrix<R>>,
    v: Option<RingMatrix<R>>,
    cap: Option<usize>,
}

impl<R: EuclideanRing> Elimination<R> {
    fn min_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => x.size_cmp(&self.a[b]).is_lt(),
                };
                if better {
                    if x.is_unit() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn place(&mut self, k: usize, (i, j): (usize, usize)) {
        self.a.swap_rows(k, i);
        self.a.swap_cols(k, j);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(k, i);
        }
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(k, j);
        }
    }

    /// `row[target] += factor * row[source]` on `A` and `U`.
    fn add_row(&mut self, target: usize, source: usize, factor: &R) -> Result<()> {
        let k = source.min(target);
        self.a.add_row_multiple(target, source, factor, k);
        if let Some(u) = self.u.as_mut() {
            u.add_row_multiple(target, source, factor, 0);
        }
        self.check_cap((k..self.a.cols()).map(|j| &self.a[(target, j)]))
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &R) -> Result<()> {
        let k = source.min(target);
        self.a.add_col_multiple(target, source, factor, k);
        if let Some(v) = self.v.as_mut() {
            v.add_col_multiple(target, source, factor, 0);
        }
        self.check_cap((k..self.a.rows()).map(|i| &self.a[(i, target)]))
    }

    fn check_cap<'a>(&self, entries: impl Iterator<Item = &'a R>) -> Result<()>
    where
        R: 'a,
    {
        if let Some(cap) = self.cap {
            if let Some(found) = entries.map(R::blowup).find(|&b| b > cap) {
                return Err(Error::DegreeCap { cap, found });
            }
        }
        Ok(())
    }

    /// Reduces column `k` and row `k` modulo the pivot; true if a nonzero
    /// remainder is left behind.
    fn clear_row_and_column(&mut self, k: usize) -> Result<bool> {
        let pivot = self.a[(k, k)].clone();
        let mut dirty = false;
        for i in k + 1..self.a.rows() {
            if self.a[(i, k)].is_zero() {
                continue;
            }
            let (q, r) = self.a[(i, k)].div_rem(&pivot)?;
            if !q.is_zero() {
                self.add_row(i, k, &q.negated())?;
            }
            dirty |= !r.is_zero();
        }
        for j in k + 1..self.a.cols() {
            if self.a[(k, j)].is_zero() {
                continue;
            }
            let (q, r) = self.a[(k, j)].div_rem(&pivot)?;
            if !q.is_zero() {
                self.add_col(j, k, &q.negated())?;
            }
            dirty |= !r.is_zero();
        }
        Ok(dirty)
    }

    fn non_divisible_row(&self, k: usize) -> Option<usize> {
        let pivot = &self.a[(k, k)];
        if pivot.is_unit() {
            return None;
        }
        (k + 1..self.a.rows()).find(|&i| {
            (k + 1..self.a.cols()).any(|j| {
                let x = &self.a[(i, j)];
                !x.is_zero() && !pivot.divides(x)
            })
        })
    }

    fn normalize_pivot(&mut self, k: usize) {
        let (normal, unit) = self.a[(k, k)].unit_normalize();
        if unit == R::one() {
            return;
        }
        let inv = unit.unit_inverse().expect("normalizing factor is a unit");
        self.a[(k, k)] = normal;
        if let Some(u) = self.u.as_mut() {
            u.scale_row(k, &inv);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn zm(rows: &[&[i64]]) -> RingMatrix<BigInt> {
        RingMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    fn lm(rows: &[&[&str]]) -> RingMatrix<LaurentPoly> {
        RingMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
                .collect(),
        )
    }

    fn check<R: EuclideanRing>(m: &RingMatrix<R>, snf: &SmithDecomposition<R>) {
        let u = snf.left.as_ref().unwrap();
        let v = snf.right.as_ref().unwrap();
        assert_eq!(u.mul(m).unwrap().mul(v).unwrap(), snf.diagonal());
        assert!(u.determinant().unwrap().is_unit());
        assert!(v.determinant().unwrap().is_unit());
        for w in snf.invariant_factors.windows(2) {
            assert!(w[0].divides(&w[1]), "{} does not divide {}", w[0], w[1]);
        }
        for d in &snf.invariant_factors {
            assert_eq!(&d.unit_normalize().0, d);
        }
    }

    #[test]
    fn z_diag_2_3() {
        let m = zm(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m, &SmithOptions::default()).unwrap();
        assert_eq!(snf.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
        check(&m, &snf);
    }

    #[test]
    fn heisenberg_relation_matrix() {
        let m = lm(&[&["t - 1", "-1"], &["0", "t - 1"]]);
        let snf = smith_normal_form(&m, &SmithOptions::default()).unwrap();
        let factors: Vec<String> = snf.invariant_factors.iter().map(|f| f.to_string()).collect();
        assert_eq!(factors, vec!["1", "t^2 - 2*t + 1"]);
        check(&m, &snf);
    }

    #[test]
    fn zero_and_empty() {
        let m = RingMatrix::<BigInt>::zeros(3, 2);
        let snf = smith_normal_form(&m, &SmithOptions::default()).unwrap();
        assert_eq!(snf.rank(), 0);
        check(&m, &snf);
        let e = RingMatrix::<LaurentPoly>::zeros(0, 4);
        let snf = smith_normal_form(&e, &SmithOptions::default()).unwrap();
        assert_eq!(snf.rank(), 0);
        assert_eq!(snf.right.unwrap(), RingMatrix::identity(4));
    }

    #[test]
    fn degree_cap_trips() {
        let m = lm(&[&["t^9 + 1", "t^7 - 2"], &["t^5 + 3", "t^8 - t"]]);
        let err = smith_normal_form(&m, &SmithOptions::default().with_degree_cap(4)).unwrap_err();
        assert!(matches!(err, Error::DegreeCap { cap: 4, .. }));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn integer_snf_contract(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-20i64..=20, 25)) {
            let m = RingMatrix::from_rows(
                (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 5 + j])).collect()).collect(),
            );
            let snf = smith_normal_form(&m, &SmithOptions::default()).unwrap();
            check(&m, &snf);
        }

        #[test]
        fn integer_factors_survive_elementary_moves(
            seed in prop::collection::vec(-9i64..=9, 16),
            moves in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3, any::<bool>()), 0..6),
        ) {
            let m = RingMatrix::from_rows(
                (0..4).map(|i| (0..4).map(|j| BigInt::from(seed[i * 4 + j])).collect()).collect(),
            );
            let moved = apply_moves(&m, &moves, BigInt::from);
            let a = smith_normal_form(&m, &SmithOptions::factors_only()).unwrap();
            let b = smith_normal_form(&moved, &SmithOptions::factors_only()).unwrap();
            prop_assert_eq!(a.invariant_factors, b.invariant_factors);
        }

        #[test]
        fn laurent_factors_survive_elementary_moves(
            seed in prop::collection::vec(prop::collection::vec(-2i64..=2, 1..3), 9),
            moves in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2, any::<bool>()), 0..4),
        ) {
            let m = RingMatrix::from_rows(
                (0..3).map(|i| (0..3).map(|j| LaurentPoly::from_i64(0, &seed[i * 3 + j])).collect()).collect(),
            );
            // multiples of t^c are units in Λ as well
            let moved = apply_moves(&m, &moves, |c| LaurentPoly::from_i64(c, &[1]));
            let a = smith_normal_form(&m, &SmithOptions::factors_only()).unwrap();
            let b = smith_normal_form(&moved, &SmithOptions::factors_only()).unwrap();
            prop_assert_eq!(a.invariant_factors, b.invariant_factors);
        }
    }

    /// Left or right multiplication by `I + c e_ij`, `i != j`.
    fn apply_moves<R: EuclideanRing>(
        m: &RingMatrix<R>,
        moves: &[(usize, usize, i64, bool)],
        coeff: impl Fn(i64) -> R,
    ) -> RingMatrix<R> {
        let mut out = m.clone();
        for &(i, j, c, left) in moves {
            if i == j {
                continue;
            }
            let n = if left { out.rows() } else { out.cols() };
            let mut e = RingMatrix::identity(n);
            e[(i, j)] = coeff(c);
            out = if left { e.mul(&out).unwrap() } else { out.mul(&e).unwrap() };
        }
        out
    }
}
