//! Dense exact linear algebra over the rationals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A column vector.
pub type Column = Vec<Scalar>;

/// Dense row-major matrix of rationals. Dimensions are fixed at construction.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Mat::from_rows(rows).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors, all of length `len`.
    pub fn from_columns(cols: &[Column], len: usize) -> Result<Self> {
        if cols.iter().any(|c| c.len() != len) {
            return Err(Error::Input("columns of unequal length".into()));
        }
        let mut m = Mat::zeros(len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    /// `n x n` matrix with a single one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = Scalar::one();
        m
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

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Column {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Column> {
        if v.len() != self.cols {
            return Err(Error::Input("vector length does not match matrix".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Mat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Input("matrix shapes differ".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Entrywise map.
    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::Input("hstack of matrices with different row counts".into()));
        }
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n)).ok()?;
        let r = rref(&aug);
        if r.pivot_columns.len() < n || r.pivot_columns[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r.reduced[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

/// Reduced row echelon form. Among candidate pivots the one with the largest numerator is taken.
pub fn rref(a: &Mat) -> Rref {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let best = (r..m.rows)
            .filter(|&i| !m[(i, c)].is_zero())
            .max_by(|&i, &j| m[(i, c)].numer().magnitude().cmp(m[(j, c)].numer().magnitude()).then(j.cmp(&i)));
        let Some(p) = best else { continue };
        if p != r {
            for j in 0..m.cols {
                m.entries.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = m[(r, c)].inv().expect("pivot is nonzero");
        for j in c..m.cols {
            if !m[(r, j)].is_zero() {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
        }
        let pivot_row: Vec<Scalar> = m.row(r).to_vec();
        for i in 0..m.rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..m.cols {
                if !pivot_row[j].is_zero() {
                    let delta = &f * &pivot_row[j];
                    m[(i, j)] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { reduced: m, rank: r, pivot_columns: pivots }
}

/// Basis of the null space, one vector per free column, read off the reduced form.
pub fn kernel(a: &Mat) -> Vec<Column> {
    let r = rref(a);
    kernel_from_rref(&r, a.cols())
}

fn kernel_from_rref(r: &Rref, cols: usize) -> Vec<Column> {
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivot_columns.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &pc) in r.pivot_columns.iter().enumerate() {
                v[pc] = -&r.reduced[(row, f)];
            }
            v
        })
        .collect()
}

/// Solution of `a x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// A particular solution with all free variables set to zero, if any solution exists.
    pub particular: Option<Column>,
    pub kernel_basis: Vec<Column>,
}

pub fn solve_linear(a: &Mat, b: &[Scalar]) -> Result<Solution> {
    if b.len() != a.rows() {
        return Err(Error::Input(format!("right-hand side has {} entries, matrix has {} rows", b.len(), a.rows())));
    }
    let bcol = Mat::from_columns(&[b.to_vec()], a.rows())?;
    let aug = a.hstack(&bcol)?;
    let r = rref(&aug);
    let n = a.cols();
    let consistent = r.pivot_columns.last().map_or(true, |&c| c < n);
    let coeff_pivots: Vec<usize> = r.pivot_columns.iter().copied().filter(|&c| c < n).collect();
    let coeff = Rref { reduced: r.reduced.clone(), rank: coeff_pivots.len(), pivot_columns: coeff_pivots };
    let kernel_basis = kernel_from_rref(&coeff, n);
    let particular = consistent.then(|| {
        let mut x = vec![Scalar::zero(); n];
        for (row, &pc) in coeff.pivot_columns.iter().enumerate() {
            x[pc] = r.reduced[(row, n)].clone();
        }
        x
    });
    Ok(Solution { particular, kernel_basis })
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Column], v: &[Scalar]) -> bool {
    if v.iter().all(Scalar::is_zero) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    let len = v.len();
    let Ok(a) = Mat::from_columns(vectors, len) else { return false };
    let Ok(sol) = solve_linear(&a, v) else { return false };
    sol.particular.is_some()
}

/// Coordinates of `v` in the span of `vectors`, if it lies there.
pub fn coordinates(vectors: &[Column], v: &[Scalar]) -> Option<Column> {
    let a = Mat::from_columns(vectors, v.len()).ok()?;
    solve_linear(&a, v).ok()?.particular
}

/// Rank of the span of a list of vectors.
pub fn span_rank(vectors: &[Column], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_columns(vectors, len).map(|m| m.rank()).unwrap_or(0)
}
