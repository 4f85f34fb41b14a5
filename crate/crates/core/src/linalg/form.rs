use serde::{Deserialize, Serialize};

use super::matrix::{dot, kernel_basis, Matrix, Vector};
use super::rational::Rational;
use super::subspace::LinearSubspace;
use crate::error::{check_len, Error, Result};

/// Sylvester's criterion: every leading principal minor is positive.
///
/// Errors on non-square or non-symmetric input.
pub fn is_positive_definite(form: &Matrix) -> Result<bool> {
    if !form.is_square() {
        return Err(Error::Input(format!(
            "form must be square, got {}x{}",
            form.nrows(),
            form.ncols()
        )));
    }
    if !form.is_symmetric() {
        return Err(Error::Input("form must be symmetric".into()));
    }
    for k in 1..=form.ncols() {
        if !form.leading_block(k).determinant()?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Q^n` equipped with a symmetric positive-definite bilinear form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSpace {
    form: Matrix,
}

impl QuadraticSpace {
    /// Validates `form` (square, symmetric, positive definite).
    pub fn new(form: Matrix) -> Result<Self> {
        if form.ncols() == 0 {
            return Err(Error::Input("ambient dimension must be positive".into()));
        }
        if !is_positive_definite(&form)? {
            return Err(Error::Input(
                "form is not positive definite (some leading principal minor <= 0)".into(),
            ));
        }
        Ok(QuadraticSpace { form })
    }

    /// Standard dot product on `Q^n`.
    pub fn euclidean(dim: usize) -> Result<Self> {
        QuadraticSpace::new(Matrix::identity(dim))
    }

    pub fn diagonal(weights: &[Rational]) -> Result<Self> {
        QuadraticSpace::new(Matrix::diagonal(weights))
    }

    /// `diag(1, 2, ..., n)`
    pub fn graded(dim: usize) -> Result<Self> {
        let weights: Vec<Rational> = (1..=dim as i64).map(Rational::from_integer).collect();
        QuadraticSpace::diagonal(&weights)
    }

    /// Tridiagonal form with 2 on the diagonal and 1 beside it.
    pub fn tridiagonal(dim: usize) -> Result<Self> {
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, Rational::from_integer(2));
            if i + 1 < dim {
                m.set(i, i + 1, Rational::one());
                m.set(i + 1, i, Rational::one());
            }
        }
        QuadraticSpace::new(m)
    }

    pub fn dim(&self) -> usize {
        self.form.ncols()
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    /// `uᵀ · form · v`
    pub fn bilinear_eval(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        check_len(self.dim(), u.len())?;
        check_len(self.dim(), v.len())?;
        Ok(self.eval_unchecked(u, v))
    }

    pub(crate) fn eval_unchecked(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.form
            .rows()
            .iter()
            .zip(u)
            .filter(|(_, ui)| !ui.is_zero())
            .map(|(row, ui)| ui * &dot(row, v))
            .sum()
    }

    /// Gram matrix `[ξ(a_i, b_j)]`.
    pub fn gram(&self, a: &[Vector], b: &[Vector]) -> Matrix {
        let rows = a
            .iter()
            .map(|u| b.iter().map(|v| self.eval_unchecked(u, v)).collect())
            .collect();
        Matrix::with_cols(rows, b.len()).expect("rectangular by construction")
    }

    /// True iff every basis vector of `a` is ξ-orthogonal to every basis vector of `b`.
    pub fn subspaces_orthogonal(&self, a: &LinearSubspace, b: &LinearSubspace) -> bool {
        a.basis()
            .iter()
            .all(|u| b.basis().iter().all(|v| self.eval_unchecked(u, v).is_zero()))
    }

    /// `{ w ∈ within : ξ(w, d) = 0 for all d ∈ of }`.
    ///
    /// Requires `of ⊆ within`; then `dim(result) = dim(within) - dim(of)`
    /// and `result ∩ of = 0`.
    pub fn xi_complement(&self, of: &LinearSubspace, within: &LinearSubspace) -> Result<LinearSubspace> {
        check_len(self.dim(), of.ambient_dim())?;
        check_len(self.dim(), within.ambient_dim())?;
        if !of.is_subspace_of(within) {
            return Err(Error::Precondition(
                "complemented subspace must lie inside the enclosing subspace".into(),
            ));
        }
        Ok(self.orthogonal_part(of, within))
    }

    /// `{ w ∈ within : w ⊥ of }` without the inclusion precondition.
    pub fn orthogonal_part(&self, of: &LinearSubspace, within: &LinearSubspace) -> LinearSubspace {
        if of.is_zero() {
            return within.clone();
        }
        let constraints = self.gram(of.basis(), within.basis());
        let coeffs = kernel_basis(constraints.rows(), within.rank());
        within.combine_all(&coeffs)
    }

    /// ξ-orthogonal complement of `of` in all of `Q^n`.
    pub fn perp(&self, of: &LinearSubspace) -> LinearSubspace {
        self.orthogonal_part(of, &LinearSubspace::full(self.dim()))
    }

    /// Parses the space file format `{"form": [["2","1"],["1","2"]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let record: QuadraticSpaceRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        QuadraticSpace::new(record.form)
    }

    pub fn to_record(&self) -> QuadraticSpaceRecord {
        QuadraticSpaceRecord {
            form: self.form.clone(),
        }
    }
}

/// On-disk representation of a [`QuadraticSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSpaceRecord {
    pub form: Matrix,
}
