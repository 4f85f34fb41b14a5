use serde::Serialize;

use super::matrix::{dot, kernel_basis, rref_in_place, Vector};
use super::rational::Rational;
use crate::error::{check_len, Result};

/// A linear subspace of `Q^n` held as its reduced row-echelon basis.
///
/// The RREF basis is unique for a given subspace, so derived equality is
/// subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearSubspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl LinearSubspace {
    /// Canonical basis of the span of `vectors`.
    pub fn span(vectors: Vec<Vector>, ambient_dim: usize) -> Result<Self> {
        for v in &vectors {
            check_len(ambient_dim, v.len())?;
        }
        let mut basis = vectors;
        let pivots = rref_in_place(&mut basis, ambient_dim);
        Ok(LinearSubspace {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        LinearSubspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| super::matrix::unit_vector(ambient_dim, i))
            .collect();
        LinearSubspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the basis components so that every pivot coordinate of the
    /// result is zero. Returns the zero vector exactly when `v` lies in the
    /// subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = -&out[p];
                super::matrix::axpy(&mut out, &c, row);
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && super::matrix::is_zero_vector(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &LinearSubspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rank() <= other.rank()
            && self.basis.iter().all(|v| other.contains_vector(v))
    }

    /// `self + other`
    pub fn sum(&self, other: &LinearSubspace) -> Result<LinearSubspace> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        LinearSubspace::span(vectors, self.ambient_dim)
    }

    /// Adds individual vectors to the span.
    pub fn extend(&self, extra: &[Vector]) -> Result<LinearSubspace> {
        let mut vectors = self.basis.clone();
        vectors.extend(extra.iter().cloned());
        LinearSubspace::span(vectors, self.ambient_dim)
    }

    /// Vectors annihilated by every basis vector under the coordinate dot product.
    pub fn annihilator(&self) -> LinearSubspace {
        let basis = kernel_basis(&self.basis, self.ambient_dim);
        LinearSubspace::span(basis, self.ambient_dim).expect("kernel vectors have ambient length")
    }

    /// `self ∩ other`
    pub fn intersection(&self, other: &LinearSubspace) -> Result<LinearSubspace> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        if self.is_subspace_of(other) {
            return Ok(self.clone());
        }
        if other.is_subspace_of(self) {
            return Ok(other.clone());
        }
        // Coefficients c with Σ c_i w_i annihilated by ann(self).
        let ann = self.annihilator();
        let constraints: Vec<Vector> = ann
            .basis
            .iter()
            .map(|a| other.basis.iter().map(|w| dot(a, w)).collect())
            .collect();
        let coeffs = kernel_basis(&constraints, other.rank());
        Ok(other.combine_all(&coeffs))
    }

    /// The vector `Σ coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[Rational]) -> Vector {
        let mut v = super::matrix::zero_vector(self.ambient_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            super::matrix::axpy(&mut v, c, b);
        }
        v
    }

    pub(crate) fn combine_all(&self, coeff_rows: &[Vector]) -> LinearSubspace {
        let vectors = coeff_rows.iter().map(|c| self.combine(c)).collect();
        LinearSubspace::span(vectors, self.ambient_dim).expect("combinations have ambient length")
    }
}
