//! Dense rational vectors and matrices with exact Gauss-Jordan elimination.

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::subspace::LinearSubspace;
use crate::error::{check_len, Error, Result};

pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

/// Builds a vector from integer coordinates.
pub fn int_vector(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Rational::from_integer(x)).collect()
}

pub fn add(u: &[Rational], v: &[Rational]) -> Vector {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[Rational], v: &[Rational]) -> Vector {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale(c: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `u += c * v`
pub fn axpy(u: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in u.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += &(c * b);
        }
    }
}

/// Standard (coordinate) dot product. Metric questions go through
/// [`QuadraticSpace`](super::QuadraticSpace) instead.
pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// Row-reduces `rows` (each of length `cols`) in place to reduced row-echelon
/// form, drops zero rows, and returns the pivot column of each remaining row.
///
/// Pivots are chosen left to right and scaled to 1, so the result depends only
/// on the row space.
pub fn rref_in_place(rows: &mut Vec<Vector>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -&row[c];
                axpy(&mut row[c..], &f, &pivot_row[c..]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank of a list of vectors of length `cols`.
pub fn rank(vectors: &[Vector], cols: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref_in_place(&mut rows, cols).len()
}

/// Null space of the linear map `x -> Σ rows[i]·x` on `Q^cols`, one basis
/// vector per free column.
pub fn kernel_basis(rows: &[Vector], cols: usize) -> Vec<Vector> {
    let mut reduced = rows.to_vec();
    let pivots = rref_in_place(&mut reduced, cols);
    let mut basis = Vec::with_capacity(cols - pivots.len());
    let mut next_pivot = 0;
    for free in 0..cols {
        if next_pivot < pivots.len() && pivots[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = zero_vector(cols);
        v[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// A dense rational matrix stored as rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: Vec<Vector>,
    cols: usize,
}

impl Matrix {
    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            check_len(cols, row.len())?;
        }
        Ok(Matrix { rows, cols })
    }

    /// Builds a matrix with a known column count (allows zero rows).
    pub fn with_cols(rows: Vec<Vector>, cols: usize) -> Result<Self> {
        for row in &rows {
            check_len(cols, row.len())?;
        }
        Ok(Matrix { rows, cols })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| int_vector(r)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows: vec![zero_vector(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::diagonal(&vec![Rational::one(); n])
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.rows[i][i] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.rows[i][j] = value;
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.rows
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix {
            rows,
            cols: self.nrows(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.cols).all(|i| (i + 1..self.cols).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector> {
        check_len(self.cols, v.len())?;
        Ok(self.rows.iter().map(|r| dot(r, v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        check_len(self.cols, other.nrows())?;
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| t.rows.iter().map(|c| dot(r, c)).collect())
            .collect();
        Ok(Matrix {
            rows,
            cols: other.cols,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        check_len(self.nrows(), other.nrows())?;
        check_len(self.cols, other.cols)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| add(a, b))
            .collect();
        Ok(Matrix {
            rows,
            cols: self.cols,
        })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows.iter().map(|r| scale(c, r)).collect(),
            cols: self.cols,
        }
    }

    /// Exact determinant by Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Input(format!(
                "determinant of a non-square {}x{} matrix",
                self.nrows(),
                self.cols
            )));
        }
        let n = self.cols;
        let mut a = self.rows.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            let inv = a[c][c].recip().expect("nonzero pivot");
            let pivot_row = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                if !row[c].is_zero() {
                    let f = -(&row[c] * &inv);
                    axpy(&mut row[c..], &f, &pivot_row[c..]);
                }
            }
        }
        Ok(det)
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> Matrix {
        Matrix {
            rows: self.rows[..k].iter().map(|r| r[..k].to_vec()).collect(),
            cols: k,
        }
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::Input("inverse of a non-square matrix".into()));
        }
        let n = self.cols;
        let mut aug: Vec<Vector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend(unit_vector(n, i));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Ok(Some(Matrix { rows, cols: n }))
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vector>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Solution set `point + kernel` of a consistent linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub point: Vector,
    pub kernel: LinearSubspace,
}

/// Solves `A x = b` exactly.
///
/// Returns `None` when the system is inconsistent. The particular solution sets
/// every free variable to zero.
pub fn solve_affine(a: &Matrix, b: &[Rational]) -> Result<Option<AffineSolutionSet>> {
    check_len(a.nrows(), b.len())?;
    let n = a.ncols();
    let mut aug: Vec<Vector> = a
        .rows()
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref_in_place(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut point = zero_vector(n);
    for (row, &p) in aug.iter().zip(&pivots) {
        point[p] = row[n].clone();
    }
    let coeffs: Vec<Vector> = aug.iter().map(|r| r[..n].to_vec()).collect();
    let kernel = LinearSubspace::span(kernel_basis(&coeffs, n), n)?;
    Ok(Some(AffineSolutionSet { point, kernel }))
}
