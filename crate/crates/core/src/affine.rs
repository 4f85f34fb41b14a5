//! Nonempty affine flats of `Q^n` and their lattice operations.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::linalg::{
    add, solve_affine, sub, LinearSubspace, Matrix, QuadraticSpace, Rational, Vector,
};

/// A nonempty flat `point + direction` inside a quadratic space.
///
/// The direction is kept in RREF and the base point is reduced modulo the
/// direction (its pivot coordinates are zero), so two flats are equal exactly
/// when their fields are equal.
#[derive(Clone)]
pub struct AffineSubspace {
    space: Arc<QuadraticSpace>,
    point: Vector,
    direction: LinearSubspace,
}

impl AffineSubspace {
    pub fn new(space: &Arc<QuadraticSpace>, point: Vector, directions: Vec<Vector>) -> Result<Self> {
        let direction = LinearSubspace::span(directions, space.dim())?;
        AffineSubspace::from_parts(space, point, direction)
    }

    pub fn from_parts(space: &Arc<QuadraticSpace>, point: Vector, direction: LinearSubspace) -> Result<Self> {
        check_len(space.dim(), point.len())?;
        check_len(space.dim(), direction.ambient_dim())?;
        let point = direction.reduce(&point);
        Ok(AffineSubspace {
            space: Arc::clone(space),
            point,
            direction,
        })
    }

    /// The single-point flat `{p}`.
    pub fn point(space: &Arc<QuadraticSpace>, p: Vector) -> Result<Self> {
        AffineSubspace::from_parts(space, p, LinearSubspace::zero(space.dim()))
    }

    /// The whole space `Q^n`.
    pub fn whole(space: &Arc<QuadraticSpace>) -> Self {
        let n = space.dim();
        AffineSubspace::from_parts(space, crate::linalg::zero_vector(n), LinearSubspace::full(n))
            .expect("shapes agree")
    }

    /// Affine hull of a nonempty list of points.
    pub fn through_points(space: &Arc<QuadraticSpace>, points: &[Vector]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::Input("affine hull of no points".into()))?;
        for p in points {
            check_len(space.dim(), p.len())?;
        }
        let dirs = points[1..].iter().map(|p| sub(p, first)).collect();
        AffineSubspace::new(space, first.clone(), dirs)
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    /// Canonical member point.
    pub fn base_point(&self) -> &Vector {
        &self.point
    }

    pub fn direction(&self) -> &LinearSubspace {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.direction.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_point(&self) -> bool {
        self.dim() == 0
    }

    pub(crate) fn same_space(&self, other: &AffineSubspace) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    fn check_point(&self, p: &[Rational]) -> Result<()> {
        if p.len() == self.ambient_dim() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn contains(&self, p: &[Rational]) -> Result<bool> {
        self.check_point(p)?;
        Ok(self.direction.contains_vector(&sub(p, &self.point)))
    }

    /// `self ⊆ other`
    pub fn is_subset_of(&self, other: &AffineSubspace) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.direction.is_subspace_of(&other.direction) && other.contains(&self.point)?)
    }

    /// `self ∩ other`, or `None` when the flats are disjoint.
    pub fn meet(&self, other: &AffineSubspace) -> Result<Option<AffineSubspace>> {
        self.same_space(other)?;
        let n = self.ambient_dim();
        let (b1, b2) = (self.direction.basis(), other.direction.basis());
        // p1 + Σ a_j u_j = p2 + Σ c_j v_j
        let rows: Vec<Vector> = (0..n)
            .map(|i| {
                b1.iter()
                    .map(|u| u[i].clone())
                    .chain(b2.iter().map(|v| -&v[i]))
                    .collect()
            })
            .collect();
        let system = Matrix::with_cols(rows, b1.len() + b2.len())?;
        let Some(solution) = solve_affine(&system, &sub(&other.point, &self.point))? else {
            return Ok(None);
        };
        let point = add(&self.point, &self.direction.combine(&solution.point[..b1.len()]));
        let direction = self.direction.intersection(&other.direction)?;
        AffineSubspace::from_parts(&self.space, point, direction).map(Some)
    }

    /// Least flat containing both arguments.
    pub fn join(&self, other: &AffineSubspace) -> Result<AffineSubspace> {
        self.same_space(other)?;
        let offset = sub(&other.point, &self.point);
        let direction = self.direction.sum(&other.direction)?.extend(&[offset])?;
        AffineSubspace::from_parts(&self.space, self.point.clone(), direction)
    }

    /// Equal direction spaces.
    pub fn parallel(&self, other: &AffineSubspace) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.direction == other.direction)
    }

    /// The flat parallel to `self` through `q`.
    pub fn translate_through(&self, q: &[Rational]) -> Result<AffineSubspace> {
        self.check_point(q)?;
        AffineSubspace::from_parts(&self.space, q.to_vec(), self.direction.clone())
    }

    /// Flat through `q` with direction `direction`, in this flat's space.
    pub fn flat_through(&self, q: &[Rational], direction: LinearSubspace) -> Result<AffineSubspace> {
        self.check_point(q)?;
        AffineSubspace::from_parts(&self.space, q.to_vec(), direction)
    }

    pub fn to_record(&self) -> SubspaceRecord {
        SubspaceRecord {
            point: self.point.clone(),
            basis: self.direction.basis().to_vec(),
        }
    }

    /// Rebuilds a flat from its JSON record, validating vector lengths against `space`.
    pub fn from_record(space: &Arc<QuadraticSpace>, record: &SubspaceRecord) -> Result<Self> {
        AffineSubspace::new(space, record.point.clone(), record.basis.clone())
    }

    pub fn from_json(space: &Arc<QuadraticSpace>, text: &str) -> Result<Self> {
        let record: SubspaceRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        AffineSubspace::from_record(space, &record)
    }
}

impl PartialEq for AffineSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other).is_ok() && self.point == other.point && self.direction == other.direction
    }
}

impl Eq for AffineSubspace {}

impl fmt::Debug for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Vector| {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(", "))
        };
        let dirs: Vec<String> = self.direction.basis().iter().map(show).collect();
        write!(f, "{} + span[{}]", show(&self.point), dirs.join(", "))
    }
}

impl Serialize for AffineSubspace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

/// JSON form of a flat: `{"point": ["0","1/2"], "basis": [["1","0"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRecord {
    pub point: Vector,
    pub basis: Vec<Vector>,
}
