//! Exact rational linear algebra: scalars, vectors, matrices, canonical
//! subspace bases and the bilinear-form primitives used by the geometry.

mod form;
mod matrix;
mod rational;
mod subspace;

pub use form::{is_positive_definite, QuadraticSpace, QuadraticSpaceRecord};
pub use matrix::{
    add, axpy, dot, int_vector, is_zero_vector, kernel_basis, rank, rref_in_place, scale,
    solve_affine, sub, unit_vector, zero_vector, AffineSolutionSet, Matrix, Vector,
};
pub use rational::Rational;
pub use subspace::LinearSubspace;

/// Canonical basis of the span of `vectors` (alias of [`LinearSubspace::span`]).
pub fn rref_basis(vectors: Vec<Vector>, ambient_dim: usize) -> crate::Result<LinearSubspace> {
    LinearSubspace::span(vectors, ambient_dim)
}
