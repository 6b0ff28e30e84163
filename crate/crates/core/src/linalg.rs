//! Exact sparse and dense matrices over [`Rational`].
//!
//! Fock operators are very sparse in word coordinates (a creation operator
//! has one entry per column), so [`SparseMatrix`] stores columns as ordered
//! maps. Gram blocks are dense and use [`DenseMatrix`].

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{to_f64, Rational};

pub type SparseVec = BTreeMap<usize, Rational>;

/// `y += a * x`, dropping entries that cancel.
pub fn axpy(y: &mut SparseVec, a: &Rational, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (&i, v) in x {
        add_entry(y, i, a * v);
    }
}

pub fn add_entry(y: &mut SparseVec, i: usize, v: Rational) {
    if v.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match y.entry(i) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn sparse_dot(x: &SparseVec, y: &SparseVec) -> Rational {
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    small
        .iter()
        .filter_map(|(i, a)| large.get(i).map(|b| a * b))
        .fold(Rational::zero(), |acc, t| acc + t)
}

pub fn max_abs(x: &SparseVec) -> Rational {
    x.values()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Square sparse matrix stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            cols: vec![SparseVec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let cols = (0..dim)
            .map(|i| SparseVec::from([(i, Rational::one())]))
            .collect();
        Self { dim, cols }
    }

    pub fn from_columns(dim: usize, cols: Vec<SparseVec>) -> Result<Self> {
        if cols.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: cols.len(),
            });
        }
        if let Some(&bad) = cols.iter().flat_map(|c| c.keys()).find(|&&r| r >= dim) {
            return Err(Error::Dimension {
                expected: dim,
                got: bad + 1,
            });
        }
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(Self { dim, cols })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.cols[c].get(&r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        if v.is_zero() {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, v);
        }
    }

    /// Column `c` += `a * x`.
    pub fn axpy_column(&mut self, c: usize, a: &Rational, x: &SparseVec) {
        debug_assert!(x.keys().all(|&r| r < self.dim));
        axpy(&mut self.cols[c], a, x);
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v)))
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut y = SparseVec::new();
        for (&j, a) in x {
            axpy(&mut y, a, &self.cols[j]);
        }
        y
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let cols = rhs.cols.iter().map(|c| self.apply(c)).collect();
        SparseMatrix {
            dim: self.dim,
            cols,
        }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(&Rational::one(), rhs)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(&-Rational::one(), rhs)
    }

    /// `self + a * rhs`
    pub fn lin_comb(&self, a: &Rational, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (o, c) in out.cols.iter_mut().zip(&rhs.cols) {
            axpy(o, a, c);
        }
        out
    }

    pub fn scale(&self, a: &Rational) -> SparseMatrix {
        if a.is_zero() {
            return SparseMatrix::zeros(self.dim);
        }
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(&r, v)| (r, v * a)).collect())
            .collect();
        SparseMatrix {
            dim: self.dim,
            cols,
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim);
        for (r, c, v) in self.entries() {
            out.cols[r].insert(c, v.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn max_abs(&self) -> Rational {
        self.cols
            .iter()
            .map(max_abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Keeps entry `(r, c)` iff `keep(r, c)`.
    pub fn filter(&self, keep: impl Fn(usize, usize) -> bool) -> SparseMatrix {
        let cols = self
            .cols
            .iter()
            .enumerate()
            .map(|(c, col)| {
                col.iter()
                    .filter(|(&r, _)| keep(r, c))
                    .map(|(&r, v)| (r, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            dim: self.dim,
            cols,
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim)
            .filter_map(|i| self.cols[i].get(&i))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.entries() {
            d[(r, c)] = v.clone();
        }
        d
    }
}

/// Row-major dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| to_f64(&self[(r, c)]))
    }

    /// Row reduction to reduced echelon form. Returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].recip();
            for c in col..self.cols {
                let v = &self[(row, c)] * &inv;
                self[(row, c)] = v;
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let f = self[(r, col)].clone();
                for c in col..self.cols {
                    if self[(row, c)].is_zero() {
                        continue;
                    }
                    let d = &f * &self[(row, c)];
                    self[(r, c)] -= d;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solves `self * X = rhs` exactly for square non-singular `self`.
    pub fn solve(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension {
                expected: self.rows,
                got: self.cols,
            });
        }
        if rhs.rows != self.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                got: rhs.rows,
            });
        }
        let n = self.rows;
        let mut aug = DenseMatrix::from_fn(n, n + rhs.cols, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - n)].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Numeric("singular matrix".into()));
        }
        Ok(DenseMatrix::from_fn(n, rhs.cols, |r, c| {
            aug[(r, n + c)].clone()
        }))
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        if self.rows == 0 {
            return Ok(DenseMatrix::zeros(0, 0));
        }
        self.solve(&DenseMatrix::identity(self.rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn inverse_of_small_matrix() {
        let m = DenseMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) => int(1),
            (0, 1) => ratio(1, 2),
            (1, 0) => ratio(1, 2),
            _ => int(1),
        });
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), DenseMatrix::identity(2));
        assert_eq!(inv[(0, 0)], ratio(4, 3));
    }

    #[test]
    fn singular_is_reported() {
        let m = DenseMatrix::from_fn(2, 2, |_, _| int(1));
        assert!(matches!(m.inverse(), Err(Error::Numeric(_))));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn sparse_product_matches_dense() {
        let mut a = SparseMatrix::zeros(3);
        a.set(0, 1, int(2));
        a.set(2, 0, ratio(1, 3));
        let mut b = SparseMatrix::zeros(3);
        b.set(1, 2, int(5));
        b.set(0, 0, int(-1));
        assert_eq!(a.mul(&b).to_dense(), a.to_dense().mul(&b.to_dense()));
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn cancellation_drops_entries() {
        let mut y = SparseVec::from([(0, int(1))]);
        axpy(&mut y, &int(-1), &SparseVec::from([(0, int(1))]));
        assert!(y.is_empty());
    }
}
