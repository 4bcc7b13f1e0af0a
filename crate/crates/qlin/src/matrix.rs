use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::Field;
use crate::Q;

/// Dense row-major matrix.  Zero rows or columns are allowed.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field = Q> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// All solutions of `a x = b`: `particular + nullspace * t` for any `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine<F: Field = Q> {
    pub particular: Matrix<F>,
    pub nullspace: Matrix<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect(),
            cols,
        )
    }

    /// A single column.
    pub fn column(v: Vec<F>) -> Self {
        let n = v.len();
        Matrix { rows: n, cols: 1, data: v }
    }

    /// Columns given as vectors of length `rows`.
    pub fn from_cols(cols: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
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

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let cur = &out[(i, j)];
                        out[(i, j)] = cur.add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let mut m = Self::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..o.cols {
                m[(i, self.cols + j)] = o[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Row-reduces using only the first `upto` columns for pivots.
    fn rref_in_place(&mut self, upto: usize) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..upto {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..cols {
                let v = &self[(r, j)];
                if !v.is_zero() {
                    self[(r, j)] = v.mul(&inv);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let b = &self[(r, j)];
                    if !b.is_zero() {
                        let cur = &self[(i, j)];
                        self[(i, j)] = cur.sub(&factor.mul(b));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self x = 0}` as columns.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots, self.cols)
    }

    /// Solves `self x = b` column-wise.
    pub fn solve(&self, b: &Self) -> Option<Affine<F>> {
        assert_eq!(self.rows, b.rows, "row counts differ");
        let n = self.cols;
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place(n);
        for i in pivots.len()..aug.rows {
            if (n..aug.cols).any(|j| !aug[(i, j)].is_zero()) {
                return None;
            }
        }
        let mut part = Self::zeros(n, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                part[(p, j)] = aug[(i, n + j)].clone();
            }
        }
        let nullspace = nullspace_from_rref(&aug, &pivots, n);
        Some(Affine { particular: part, nullspace })
    }

    pub fn solve_vec(&self, b: &[F]) -> Option<(Vec<F>, Self)> {
        let aff = self.solve(&Self::column(b.to_vec()))?;
        Some((aff.particular.col(0), aff.nullspace))
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(n));
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

fn nullspace_from_rref<F: Field>(r: &Matrix<F>, pivots: &[usize], n: usize) -> Matrix<F> {
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut ns = Matrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        ns[(f, k)] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            let v = &r[(i, f)];
            if !v.is_zero() {
                ns[(p, k)] = v.neg();
            }
        }
    }
    ns
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

pub fn mat_rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

pub fn mat_solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<Affine<F>> {
    a.solve(b)
}

pub fn mat_nullspace<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    m.nullspace()
}

pub fn mat_inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    m.inverse()
}
