//! Bounded random draws of rationals, vectors, subspaces and flats.

use std::sync::Arc;

use rand::Rng;

use crate::affine::AffineSubspace;
use crate::error::{Error, Result};
use crate::linalg::{add, LinearSubspace, QuadraticSpace, Rational, Vector};

pub const DEFAULT_RETRIES: usize = 64;

/// Coordinate bounds and the retry budget for degenerate draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampler {
    /// Numerators are drawn from `-numerator_bound..=numerator_bound`.
    pub numerator_bound: i64,
    /// Denominators are drawn from `1..=denominator_bound`.
    pub denominator_bound: i64,
    pub retries: usize,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler {
            numerator_bound: 4,
            denominator_bound: 3,
            retries: DEFAULT_RETRIES,
        }
    }
}

impl Sampler {
    pub fn new(numerator_bound: i64, denominator_bound: i64, retries: usize) -> Result<Self> {
        if numerator_bound < 1 || denominator_bound < 1 || retries < 1 {
            return Err(Error::Input(
                "numerator bound, denominator bound and retries must all be >= 1".into(),
            ));
        }
        Ok(Sampler {
            numerator_bound,
            denominator_bound,
            retries,
        })
    }

    pub fn rational<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        let n = rng.gen_range(-self.numerator_bound..=self.numerator_bound);
        let d = rng.gen_range(1..=self.denominator_bound);
        Rational::new(n, d)
    }

    pub fn vector<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vector {
        (0..n).map(|_| self.rational(rng)).collect()
    }

    /// A random combination of the basis of `within`.
    pub fn vector_in<R: Rng + ?Sized>(&self, rng: &mut R, within: &LinearSubspace) -> Vector {
        let coeffs: Vec<Rational> = (0..within.rank()).map(|_| self.rational(rng)).collect();
        within.combine(&coeffs)
    }

    /// A random `k`-dimensional subspace of `within`.
    pub fn subspace_in<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        within: &LinearSubspace,
        k: usize,
    ) -> Result<LinearSubspace> {
        if k > within.rank() {
            return Err(Error::Input(format!(
                "cannot draw a {k}-dimensional subspace of a {}-dimensional one",
                within.rank()
            )));
        }
        if k == within.rank() {
            return Ok(within.clone());
        }
        for _ in 0..self.retries {
            let vectors = (0..k).map(|_| self.vector_in(rng, within)).collect();
            let s = LinearSubspace::span(vectors, within.ambient_dim())?;
            if s.rank() == k {
                return Ok(s);
            }
        }
        Err(self.exhausted(format!("{k}-dimensional subspace")))
    }

    /// A random `k`-dimensional subspace of `within` meeting `avoid` only in 0.
    pub fn subspace_avoiding<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        within: &LinearSubspace,
        avoid: &LinearSubspace,
        k: usize,
    ) -> Result<LinearSubspace> {
        for _ in 0..self.retries {
            let s = self.subspace_in(rng, within, k)?;
            if s.sum(avoid)?.rank() == k + avoid.rank() {
                return Ok(s);
            }
        }
        Err(self.exhausted(format!("{k}-dimensional subspace transversal to a given one")))
    }

    pub fn point_in<R: Rng + ?Sized>(&self, rng: &mut R, x: &AffineSubspace) -> Vector {
        add(x.base_point(), &self.vector_in(rng, x.direction()))
    }

    /// Random flat of dimension `k` in `space`.
    pub fn flat<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        space: &Arc<QuadraticSpace>,
        k: usize,
    ) -> Result<AffineSubspace> {
        let n = space.dim();
        if k > n {
            return Err(Error::Input(format!("flat dimension {k} exceeds ambient dimension {n}")));
        }
        let direction = self.subspace_in(rng, &LinearSubspace::full(n), k)?;
        AffineSubspace::from_parts(space, self.vector(rng, n), direction)
    }

    /// Random `k`-dimensional flat inside `x` through a random point of `x`.
    pub fn subflat<R: Rng + ?Sized>(&self, rng: &mut R, x: &AffineSubspace, k: usize) -> Result<AffineSubspace> {
        let direction = self.subspace_in(rng, x.direction(), k)?;
        x.flat_through(&self.point_in(rng, x), direction)
    }

    /// Random `k`-dimensional flat containing `x`.
    pub fn superflat<R: Rng + ?Sized>(&self, rng: &mut R, x: &AffineSubspace, k: usize) -> Result<AffineSubspace> {
        let n = x.ambient_dim();
        if k < x.dim() || k > n {
            return Err(Error::Input(format!(
                "no {k}-dimensional flat contains a {}-dimensional one in dimension {n}",
                x.dim()
            )));
        }
        let extra = self.subspace_avoiding(rng, &LinearSubspace::full(n), x.direction(), k - x.dim())?;
        x.flat_through(x.base_point(), x.direction().sum(&extra)?)
    }

    pub fn exhausted(&self, what: String) -> Error {
        Error::Generation {
            what,
            attempts: self.retries,
        }
    }
}
