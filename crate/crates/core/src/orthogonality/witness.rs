use std::sync::Arc;

use rand::Rng;

use super::{orthocomplement_in, perp_m, TypedPerpParams};
use crate::affine::AffineSubspace;
use crate::error::{Error, Result};
use crate::linalg::{LinearSubspace, QuadraticSpace};
use crate::sample::Sampler;

/// Draws a random pair `X1 ⊥ᵐ_{k1,k2} X2`.
///
/// Both flats pass through a random point `q` and share a random `m`-flat `M`;
/// `X1` adds `k1 - m` directions ξ-orthogonal to `M`, and `X2` adds `k2 - m`
/// directions ξ-orthogonal to all of `X1`. Refuses with
/// [`Error::Unsatisfiable`] exactly when `k1 + k2 - m > n`.
pub fn make_perp_pair<R: Rng + ?Sized>(
    space: &Arc<QuadraticSpace>,
    params: &TypedPerpParams,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<(AffineSubspace, AffineSubspace)> {
    let n = space.dim();
    let params = TypedPerpParams::new(params.m, params.k1, params.k2)?;
    if !params.satisfiable_in(n) {
        return Err(Error::Unsatisfiable {
            required: params.join_dim(),
            dim: n,
        });
    }
    let q = sampler.vector(rng, n);
    let meet = sampler.subspace_in(rng, &LinearSubspace::full(n), params.m)?;
    let z1 = sampler.subspace_in(rng, &space.perp(&meet), params.k1 - params.m)?;
    let dir1 = meet.sum(&z1)?;
    let z2 = sampler.subspace_in(rng, &space.perp(&dir1), params.k2 - params.m)?;
    let dir2 = meet.sum(&z2)?;
    let x1 = AffineSubspace::from_parts(space, q.clone(), dir1)?;
    let x2 = AffineSubspace::from_parts(space, q, dir2)?;
    if !perp_m(&x1, &x2, &params)? {
        return Err(Error::Internal(format!(
            "constructed pair {x1:?}, {x2:?} is not related by {params:?}"
        )));
    }
    Ok((x1, x2))
}

/// For `∅ ≠ A ⊊ B ⊊ C`, the flat `B' = A ⊔ (orthocomplement of B in C)`,
/// the only flat with `B ∩ B' = A`, `B ⊥g B'` and `B ⊔ B' = C`.
pub fn unique_complement(a: &AffineSubspace, b: &AffineSubspace, c: &AffineSubspace) -> Result<AffineSubspace> {
    let proper = |x: &AffineSubspace, y: &AffineSubspace| -> Result<bool> {
        Ok(x.is_subset_of(y)? && x.dim() < y.dim())
    };
    if !proper(a, b)? || !proper(b, c)? {
        return Err(Error::Precondition("unique complement needs A ⊊ B ⊊ C".into()));
    }
    let q = a.base_point();
    a.join(&orthocomplement_in(b, c, q)?)
}
