use std::fmt;
use std::ops::{Index, IndexMut};

use super::EuclideanRing;
use crate::error::{Error, Result};

/// Dense row-major matrix over a Euclidean ring.
#[derive(Clone, PartialEq)]
pub struct RingMatrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: EuclideanRing> RingMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            entries: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but keeps the column count when
    /// there are no rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<R>>, cols: usize) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            entries.extend(row);
        }
        RingMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_columns(columns: Vec<Vec<R>>, rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix columns");
            for (i, x) in col.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(R::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].plus(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(R::zero(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`, restricted to columns `from..`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &R, from: usize) {
        for j in from..self.cols {
            let s = &self.entries[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = factor.times(s);
            let t = &mut self.entries[target * self.cols + j];
            *t = t.plus(&delta);
        }
    }

    /// `col[target] += factor * col[source]`, restricted to rows `from..`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &R, from: usize) {
        for i in from..self.rows {
            let s = &self.entries[i * self.cols + source];
            if s.is_zero() {
                continue;
            }
            let delta = factor.times(s);
            let t = &mut self.entries[i * self.cols + target];
            *t = t.plus(&delta);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, factor: &R) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            if !e.is_zero() {
                *e = e.times(factor);
            }
        }
    }

    /// Determinant by cofactor expansion; meant for the small matrices
    /// arising as elimination transforms.
    pub fn determinant(&self) -> Result<R> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_det(0, &idx))
    }

    fn cofactor_det(&self, row: usize, cols: &[usize]) -> R {
        if cols.is_empty() {
            return R::one();
        }
        let mut acc = R::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let a = &self[(row, c)];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.times(&self.cofactor_det(row + 1, &rest));
            acc = if pos % 2 == 0 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        acc
    }

    /// True when every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn map<S, F: Fn(&R) -> S>(&self, f: F) -> Vec<Vec<S>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(&f).collect())
            .collect()
    }
}

impl<R> Index<(usize, usize)> for RingMatrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for RingMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl<R: EuclideanRing> fmt::Display for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<R: EuclideanRing> fmt::Debug for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
