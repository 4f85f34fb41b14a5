//! Orthogonality relations between flats.
//!
//! Every relation is decided exactly from direction spaces and the quadratic
//! form; no search over witnesses is needed because each existential witness
//! is forced to be an orthocomplement.

mod isometry;
mod witness;

pub use isometry::{reflection, reflections_commute, AffineIsometry};
pub use witness::{make_perp_pair, unique_complement};

use serde::{Deserialize, Serialize};

use crate::affine::AffineSubspace;
use crate::error::{Error, Result};
use crate::linalg::{sub, QuadraticSpace, Rational};

/// Dimensions `(m, k1, k2)` of the typed relation `X1 ⊥ᵐ_{k1,k2} X2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypedPerpParams {
    pub m: usize,
    pub k1: usize,
    pub k2: usize,
}

impl TypedPerpParams {
    /// Requires `m < k1` and `m < k2`: the meet is a proper subflat of both.
    pub fn new(m: usize, k1: usize, k2: usize) -> Result<Self> {
        if m >= k1 || m >= k2 {
            return Err(Error::Input(format!(
                "typed orthogonality needs m < k1 and m < k2, got (m, k1, k2) = ({m}, {k1}, {k2})"
            )));
        }
        Ok(TypedPerpParams { m, k1, k2 })
    }

    /// `dim(X1 ⊔ X2)` of any related pair.
    pub fn join_dim(&self) -> usize {
        self.k1 + self.k2 - self.m
    }

    /// Some pair in dimension `n` is related iff `k1 + k2 - m <= n`.
    pub fn satisfiable_in(&self, n: usize) -> bool {
        self.join_dim() <= n
    }

    /// The same relation with argument roles exchanged.
    pub fn swapped(&self) -> Self {
        TypedPerpParams {
            m: self.m,
            k1: self.k2,
            k2: self.k1,
        }
    }
}

/// `a,b ⊥ c,d`: the difference vectors are ξ-orthogonal. A degenerate pair
/// (`a = b` or `c = d`) is orthogonal to everything.
pub fn perp_points(
    space: &QuadraticSpace,
    a: &[Rational],
    b: &[Rational],
    c: &[Rational],
    d: &[Rational],
) -> Result<bool> {
    for p in [a, b, c, d] {
        if p.len() != space.dim() {
            return Err(Error::AmbientMismatch);
        }
    }
    Ok(space.bilinear_eval(&sub(b, a), &sub(d, c))?.is_zero())
}

/// `X ⊥ Y`: every direction of `X` is ξ-orthogonal to every direction of `Y`.
pub fn perp_subspaces(x: &AffineSubspace, y: &AffineSubspace) -> Result<bool> {
    x.same_space(y)?;
    Ok(x.space().subspaces_orthogonal(x.direction(), y.direction()))
}

/// `X ⊥× Y`: orthogonal and intersecting.
pub fn perp_x(x: &AffineSubspace, y: &AffineSubspace) -> Result<bool> {
    if !perp_subspaces(x, y)? {
        return Ok(false);
    }
    match x.meet(y)? {
        None => Ok(false),
        Some(meet) if meet.dim() > 0 => Err(Error::Internal(format!(
            "orthogonal flats {x:?} and {y:?} share a {}-dimensional meet",
            meet.dim()
        ))),
        Some(_) => Ok(true),
    }
}

/// The orthocomplement of `x` in `v` through `q`: the flat through `q` whose
/// direction is the ξ-complement of `dir x` inside `dir v`.
pub fn orthocomplement_in(x: &AffineSubspace, v: &AffineSubspace, q: &[Rational]) -> Result<AffineSubspace> {
    if !x.is_subset_of(v)? {
        return Err(Error::Precondition("orthocomplement requires X ⊆ V".into()));
    }
    if !x.contains(q)? {
        return Err(Error::Precondition("orthocomplement requires q ∈ X".into()));
    }
    let direction = x.space().xi_complement(x.direction(), v.direction())?;
    x.flat_through(q, direction)
}

/// Which argument's orthocomplement serves as the witness in [`perp_go_at`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// `X1 ⊥g° X2` evaluated with an explicit meet point `q` and witness side.
///
/// With `M = X1 ∩ X2`, the witness for side `i` is the orthocomplement of `M`
/// in `X_i` through `q`; the relation holds iff it is orthogonal to the other
/// flat. Errors if `q ∉ X1 ∩ X2`.
pub fn perp_go_at(x1: &AffineSubspace, x2: &AffineSubspace, q: &[Rational], side: Side) -> Result<bool> {
    let meet = x1
        .meet(x2)?
        .ok_or_else(|| Error::Precondition("flats do not meet".into()))?;
    let (own, other) = match side {
        Side::First => (x1, x2),
        Side::Second => (x2, x1),
    };
    let z = orthocomplement_in(&meet, own, q)?;
    perp_subspaces(&z, other)
}

/// `X1 ⊥g° X2`. False for disjoint flats; true whenever one contains the other.
pub fn perp_go(x1: &AffineSubspace, x2: &AffineSubspace) -> Result<bool> {
    let Some(meet) = x1.meet(x2)? else {
        return Ok(false);
    };
    let space = x1.space();
    let z = space.xi_complement(meet.direction(), x1.direction())?;
    Ok(space.subspaces_orthogonal(&z, x2.direction()))
}

/// `X1 ⊥g X2`: `⊥g°` with neither flat contained in the other.
pub fn perp_g(x1: &AffineSubspace, x2: &AffineSubspace) -> Result<bool> {
    Ok(perp_go(x1, x2)? && !x1.is_subset_of(x2)? && !x2.is_subset_of(x1)?)
}

/// `X1 ⊥ᵐ_{k1,k2} X2`. Dimension mismatches give `false`.
pub fn perp_m(x1: &AffineSubspace, x2: &AffineSubspace, params: &TypedPerpParams) -> Result<bool> {
    x1.same_space(x2)?;
    if x1.dim() != params.k1 || x2.dim() != params.k2 {
        return Ok(false);
    }
    match x1.meet(x2)? {
        Some(meet) if meet.dim() == params.m => perp_g(x1, x2),
        _ => Ok(false),
    }
}

/// Orthoadjacency of `k`-flats: `⊥^{k-1}_{k,k}`.
pub fn orthoadjacent(x1: &AffineSubspace, x2: &AffineSubspace, k: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::Input("orthoadjacency needs k >= 1".into()));
    }
    perp_m(x1, x2, &TypedPerpParams::new(k - 1, k, k)?)
}
