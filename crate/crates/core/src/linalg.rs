//! Dense matrices over a generic scalar, with exact elimination.
//!
//! Two elimination paths are provided: reduced row echelon form over a
//! field (used for kernels and coordinates) and fraction-free Bareiss
//! elimination over an integral domain (used for ranks and determinants
//! without leaving the ring).

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for row in rows {
            assert_eq!(row.len(), m, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols: m,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = a.clone() + b.clone();
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(r, c)].clone() + a.clone() * b.clone();
                    out[(r, c)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[&Self], cols: usize) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |r, c| self[(rows[r], c)].clone())
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// Rank by fraction-free (Bareiss) elimination. Every division is exact
    /// in an integral domain, so this stays inside the ring of the entries.
    pub fn rank_fraction_free(&self) -> usize {
        bareiss(self.clone()).0
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant_fraction_free(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return T::one();
        }
        let (rank, det) = bareiss(self.clone());
        if rank < self.rows {
            T::zero()
        } else {
            det
        }
    }
}

/// Returns the rank and, for full-rank square input, the determinant.
fn bareiss<T: Scalar>(mut m: Matrix<T>) -> (usize, T) {
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = T::one();
    let mut sign_flips = 0usize;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[(r, c)].is_zero()) else {
            continue;
        };
        if p != rank {
            for k in 0..cols {
                m.data.swap(p * cols + k, rank * cols + k);
            }
            sign_flips += 1;
        }
        let pivot = m[(rank, c)].clone();
        for r in rank + 1..rows {
            let lead = m[(r, c)].clone();
            for k in c + 1..cols {
                let v = (pivot.clone() * m[(r, k)].clone() - lead.clone() * m[(rank, k)].clone())
                    / prev.clone();
                m[(r, k)] = v;
            }
            m[(r, c)] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    let det = if sign_flips % 2 == 1 { -prev } else { prev };
    (rank, det)
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Field> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let cols = self.reduced.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![T::zero(); cols];
            v[free] = T::one();
            for (r, &p) in self.pivots.iter().enumerate() {
                let a = &self.reduced[(r, free)];
                if !a.is_zero() {
                    v[p] = -a.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl<T: Field> Matrix<T> {
    pub fn echelon(&self) -> Echelon<T> {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..cols {
                    m.data.swap(p * cols + k, r * cols + k);
                }
            }
            let inv = T::one() / m[(r, c)].clone();
            if !inv.is_one() {
                for k in c..cols {
                    if !m[(r, k)].is_zero() {
                        let v = m[(r, k)].clone() * inv.clone();
                        m[(r, k)] = v;
                    }
                }
            }
            let support: Vec<usize> = (c..cols).filter(|&k| !m[(r, k)].is_zero()).collect();
            for i in 0..rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for &k in &support {
                    let v = m[(i, k)].clone() - factor.clone() * m[(r, k)].clone();
                    m[(i, k)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn kernel(&self) -> Vec<Vec<T>> {
        self.echelon().kernel()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Two-sided inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                T::one()
            } else {
                T::zero()
            }
        });
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
            return None;
        }
        Some(ech.reduced.block(0, n, n, n))
    }
}
