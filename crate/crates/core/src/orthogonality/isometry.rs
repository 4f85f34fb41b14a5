use std::sync::Arc;

use serde::Serialize;

use crate::affine::AffineSubspace;
use crate::error::{check_len, Error, Result};
use crate::linalg::{add, sub, Matrix, QuadraticSpace, Rational, Vector};

/// An affine map `p ↦ A p + t` preserving the quadratic form.
#[derive(Clone, Debug, Serialize)]
pub struct AffineIsometry {
    #[serde(skip)]
    space: Arc<QuadraticSpace>,
    matrix: Matrix,
    translation: Vector,
}

impl AffineIsometry {
    /// Checks `Aᵀ G A = G` before accepting the map.
    pub fn new(space: &Arc<QuadraticSpace>, matrix: Matrix, translation: Vector) -> Result<Self> {
        let n = space.dim();
        check_len(n, matrix.nrows())?;
        check_len(n, matrix.ncols())?;
        check_len(n, translation.len())?;
        let pulled_back = matrix.transpose().mul(space.form())?.mul(&matrix)?;
        if &pulled_back != space.form() {
            return Err(Error::Input("linear part does not preserve the form".into()));
        }
        Ok(AffineIsometry {
            space: Arc::clone(space),
            matrix,
            translation,
        })
    }

    pub fn identity(space: &Arc<QuadraticSpace>) -> Self {
        let n = space.dim();
        AffineIsometry {
            space: Arc::clone(space),
            matrix: Matrix::identity(n),
            translation: crate::linalg::zero_vector(n),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn translation(&self) -> &Vector {
        &self.translation
    }

    pub fn apply(&self, p: &[Rational]) -> Result<Vector> {
        Ok(add(&self.matrix.mul_vec(p)?, &self.translation))
    }

    fn same_space(&self, other: &AffineIsometry) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineIsometry) -> Result<AffineIsometry> {
        self.same_space(other)?;
        Ok(AffineIsometry {
            space: Arc::clone(&self.space),
            matrix: self.matrix.mul(&other.matrix)?,
            translation: self.apply(&other.translation)?,
        })
    }

    /// Exact componentwise equality.
    pub fn equals(&self, other: &AffineIsometry) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.matrix == other.matrix && self.translation == other.translation)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.space.dim()) && crate::linalg::is_zero_vector(&self.translation)
    }
}

/// The reflection in `x`: the ξ-orthogonal involution fixing `x` pointwise.
///
/// Writes `p - q = u + w` with `u ∈ dir x` and `w ⊥ dir x` and sends `p` to
/// `q + u - w`.
pub fn reflection(x: &AffineSubspace) -> AffineIsometry {
    let space = x.space();
    let n = space.dim();
    let basis = x.direction().basis();
    // ξ-orthogonal projection onto dir x: Bᵀ (B G Bᵀ)⁻¹ B G.
    let projection = if basis.is_empty() {
        Matrix::zeros(n, n)
    } else {
        let b = Matrix::from_rows(basis.to_vec()).expect("rectangular basis");
        let gram_inv = space
            .gram(basis, basis)
            .inverse()
            .expect("square gram")
            .expect("positive definite gram is invertible");
        b.transpose()
            .mul(&gram_inv)
            .and_then(|m| m.mul(&b))
            .and_then(|m| m.mul(space.form()))
            .expect("conformable shapes")
    };
    let two = Rational::from_integer(2);
    let matrix = projection
        .scale(&two)
        .add(&Matrix::identity(n).scale(&-Rational::one()))
        .expect("conformable shapes");
    let q = x.base_point();
    let translation = sub(q, &matrix.mul_vec(q).expect("ambient length"));
    AffineIsometry {
        space: Arc::clone(space),
        matrix,
        translation,
    }
}

/// `σ_{X1} σ_{X2} = σ_{X2} σ_{X1}`
pub fn reflections_commute(x1: &AffineSubspace, x2: &AffineSubspace) -> Result<bool> {
    let (r1, r2) = (reflection(x1), reflection(x2));
    r1.compose(&r2)?.equals(&r2.compose(&r1)?)
}
