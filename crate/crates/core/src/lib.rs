//! Exact-arithmetic kernel for orthogonality relations between affine
//! subspaces of a rational Euclidean space.

pub mod affine;
pub mod error;
pub mod linalg;
pub mod orthogonality;
pub mod reconstruction;
pub mod harness;
pub mod sample;

pub use affine::{AffineSubspace, SubspaceRecord};
pub use error::{Error, Result};
pub use linalg::{LinearSubspace, Matrix, QuadraticSpace, Rational, Vector};
pub use orthogonality::{AffineIsometry, TypedPerpParams};
pub use sample::Sampler;
