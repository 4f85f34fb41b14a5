//! Recovering line orthogonality from a black-box typed orthogonality
//! predicate.
//!
//! The pipeline has two reductions:
//!
//! 1. `⊥ᵐ_{k1,k2}` to `⊥⁰_{k1-m,k2}`: a `(k1-m)`-flat `Y1` meeting `X2` in a
//!    point is orthogonal to `X2` iff every `k1`-flat `X1 ⊇ Y1` with an
//!    `m`-dimensional meet with `X2` is related to `X2`. One well-chosen `X1`
//!    (see [`lemma1_witness`]) already decides this.
//! 2. `⊥⁰` to line orthogonality: two lines are orthogonal iff they lie in a
//!    pair of flats of the right dimensions that are orthogonal and meet. For
//!    skew lines the second flat must contain the common perpendicular.
//!
//! The pipeline never evaluates the quadratic form on the decision path: every
//! verdict is an oracle answer. The form is used only to *construct* candidate
//! flats.

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::affine::AffineSubspace;
use crate::error::{Error, Result};
use crate::linalg::{sub, zero_vector, LinearSubspace, Matrix, Vector};
use crate::orthogonality::{orthocomplement_in, perp_m, TypedPerpParams};
use crate::sample::Sampler;

/// A queryable relation on `H_{k1} × H_{k2}`.
pub trait PerpOracle: Sync {
    fn params(&self) -> TypedPerpParams;
    fn query(&self, x1: &AffineSubspace, x2: &AffineSubspace) -> Result<bool>;
}

/// The oracle backed by the kernel's own [`perp_m`].
#[derive(Clone, Copy, Debug)]
pub struct GroundTruthOracle {
    pub params: TypedPerpParams,
}

impl PerpOracle for GroundTruthOracle {
    fn params(&self) -> TypedPerpParams {
        self.params
    }

    fn query(&self, x1: &AffineSubspace, x2: &AffineSubspace) -> Result<bool> {
        perp_m(x1, x2, &self.params)
    }
}

/// Wraps a closure as an oracle.
pub struct FnOracle<F> {
    params: TypedPerpParams,
    f: F,
}

impl<F> FnOracle<F>
where
    F: Fn(&AffineSubspace, &AffineSubspace) -> Result<bool> + Sync,
{
    pub fn new(params: TypedPerpParams, f: F) -> Self {
        FnOracle { params, f }
    }
}

impl<F> PerpOracle for FnOracle<F>
where
    F: Fn(&AffineSubspace, &AffineSubspace) -> Result<bool> + Sync,
{
    fn params(&self) -> TypedPerpParams {
        self.params
    }

    fn query(&self, x1: &AffineSubspace, x2: &AffineSubspace) -> Result<bool> {
        (self.f)(x1, x2)
    }
}

/// Counts queries passed through to an inner oracle.
pub struct CountingOracle<'a, O: ?Sized> {
    inner: &'a O,
    count: AtomicUsize,
}

impl<'a, O: PerpOracle + ?Sized> CountingOracle<'a, O> {
    pub fn new(inner: &'a O) -> Self {
        CountingOracle {
            inner,
            count: AtomicUsize::new(0),
        }
    }

    pub fn queries(&self) -> usize {
        self.count.load(Ordering::Relaxed)
    }
}

impl<O: PerpOracle + ?Sized> PerpOracle for CountingOracle<'_, O> {
    fn params(&self) -> TypedPerpParams {
        self.inner.params()
    }

    fn query(&self, x1: &AffineSubspace, x2: &AffineSubspace) -> Result<bool> {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.inner.query(x1, x2)
    }
}

/// Presents `⊥ᵐ_{k1,k2}` as `⊥ᵐ_{k2,k1}` by swapping arguments.
struct Swapped<'a, O: ?Sized>(&'a O);

impl<O: PerpOracle + ?Sized> PerpOracle for Swapped<'_, O> {
    fn params(&self) -> TypedPerpParams {
        self.0.params().swapped()
    }

    fn query(&self, x1: &AffineSubspace, x2: &AffineSubspace) -> Result<bool> {
        self.0.query(x2, x1)
    }
}

/// How the `⊥⁰` stage picks the `k1`-flats it asks the oracle about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReconstructionMode {
    /// One constructed witness; exact.
    Witness,
    /// `trials` random incidence-valid candidates; a `false` is certain, a
    /// `true` may be wrong.
    Sampled { trials: usize, sampler: SamplerSpec },
}

/// Serializable mirror of [`Sampler`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub numerator_bound: i64,
    pub denominator_bound: i64,
    pub retries: usize,
}

impl From<Sampler> for SamplerSpec {
    fn from(s: Sampler) -> Self {
        SamplerSpec {
            numerator_bound: s.numerator_bound,
            denominator_bound: s.denominator_bound,
            retries: s.retries,
        }
    }
}

impl From<SamplerSpec> for Sampler {
    fn from(s: SamplerSpec) -> Self {
        Sampler {
            numerator_bound: s.numerator_bound,
            denominator_bound: s.denominator_bound,
            retries: s.retries,
        }
    }
}

impl ReconstructionMode {
    pub fn sampled(trials: usize, sampler: Sampler) -> Result<Self> {
        if trials == 0 {
            return Err(Error::Input("sampled mode needs at least one trial".into()));
        }
        Ok(ReconstructionMode::Sampled {
            trials,
            sampler: sampler.into(),
        })
    }
}

fn single_point_meet(y1: &AffineSubspace, x2: &AffineSubspace) -> Result<Vector> {
    match y1.meet(x2)? {
        Some(meet) if meet.is_point() => Ok(meet.base_point().clone()),
        _ => Err(Error::Precondition("Y1 and X2 must meet in exactly one point".into())),
    }
}

/// Builds `X1 ⊇ Y1` with `dim X1 = dim Y1 + m` and `dim(X1 ∩ X2) = m` such
/// that `X1 ⊥g X2` holds iff `Y1 ⊥× X2`.
///
/// With `q = Y1 ∩ X2`, `V = Y1 ⊔ X2` and `W` the orthocomplement of `Y1` in
/// `V` through `q`, the meet `T` is spanned by the first `m` canonical
/// directions of `W ∩ X2`.
pub fn lemma1_witness(y1: &AffineSubspace, x2: &AffineSubspace, m: usize) -> Result<AffineSubspace> {
    let q = single_point_meet(y1, x2)?;
    if y1.dim() < 1 {
        return Err(Error::Precondition("Y1 must have dimension at least 1".into()));
    }
    if m > x2.dim() {
        return Err(Error::Precondition(format!(
            "meet dimension {m} exceeds dim X2 = {}",
            x2.dim()
        )));
    }
    let (k1, k2, n) = (y1.dim() + m, x2.dim(), y1.ambient_dim());
    if k1 > k2 {
        return Err(Error::Precondition(format!("needs k1 <= k2, got {k1} > {k2}")));
    }
    if k1 + k2 - m > n {
        return Err(Error::Precondition(format!(
            "needs k1 + k2 - m <= {n}, got {}",
            k1 + k2 - m
        )));
    }
    if m == 0 {
        return Ok(y1.clone());
    }
    let v = y1.join(x2)?;
    let w = orthocomplement_in(y1, &v, &q)?;
    let shared = w
        .meet(x2)?
        .ok_or_else(|| Error::Internal("orthocomplement misses X2".into()))?;
    if shared.dim() < m {
        return Err(Error::Internal(format!(
            "W ∩ X2 has dimension {} < m = {m}",
            shared.dim()
        )));
    }
    let t_dir = LinearSubspace::span(shared.direction().basis()[..m].to_vec(), n)?;
    let x1 = y1.join(&y1.flat_through(&q, t_dir)?)?;
    let meet_dim = x1.meet(x2)?.map(|x| x.dim());
    if x1.dim() != k1 || meet_dim != Some(m) || !y1.is_subset_of(&x1)? {
        return Err(Error::Internal(format!("lemma1_witness produced {x1:?} with the wrong shape")));
    }
    Ok(x1)
}

/// Decides `Y1 ⊥⁰_{k1-m,k2} X2` using only the oracle for `⊥ᵐ_{k1,k2}`.
pub fn decide_perp0<O, R>(
    y1: &AffineSubspace,
    x2: &AffineSubspace,
    oracle: &O,
    mode: &ReconstructionMode,
    rng: &mut R,
) -> Result<bool>
where
    O: PerpOracle + ?Sized,
    R: Rng + ?Sized,
{
    let params = oracle.params();
    if y1.dim() + params.m != params.k1 || x2.dim() != params.k2 {
        return Err(Error::Precondition(format!(
            "flat dimensions ({}, {}) do not match oracle parameters {params:?}",
            y1.dim(),
            x2.dim()
        )));
    }
    let q = single_point_meet(y1, x2)?;
    match mode {
        ReconstructionMode::Witness => oracle.query(&lemma1_witness(y1, x2, params.m)?, x2),
        ReconstructionMode::Sampled { trials, sampler } => {
            let sampler = Sampler::from(*sampler);
            for _ in 0..*trials {
                let x1 = sample_lemma1_candidate(y1, x2, &q, params.m, &sampler, rng)?;
                if !oracle.query(&x1, x2)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Random `X1 = Y1 ⊔ T` with `T` an `m`-flat of `X2` through `q`, rejecting
/// draws with the wrong dimensions. Uses incidence only.
pub fn sample_lemma1_candidate<R: Rng + ?Sized>(
    y1: &AffineSubspace,
    x2: &AffineSubspace,
    q: &[crate::Rational],
    m: usize,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<AffineSubspace> {
    for _ in 0..sampler.retries {
        let t = x2.flat_through(q, sampler.subspace_in(rng, x2.direction(), m)?)?;
        let x1 = y1.join(&t)?;
        let meet_dim = x1.meet(x2)?.map(|x| x.dim());
        if x1.dim() == y1.dim() + m && meet_dim == Some(m) {
            return Ok(x1);
        }
    }
    Err(sampler.exhausted(format!("incidence-valid {}-flat through Y1", y1.dim() + m)))
}

fn line_direction(l: &AffineSubspace) -> Result<&Vector> {
    match l.direction().basis() {
        [d] => Ok(d),
        _ => Err(Error::Precondition(format!("expected a line, got a {}-flat", l.dim()))),
    }
}

/// Closest points of two non-parallel lines: `q ∈ L1`, `p2 ∈ L2` with
/// `p2 - q` ξ-orthogonal to both directions. `None` for parallel lines.
fn closest_feet(l1: &AffineSubspace, l2: &AffineSubspace) -> Result<Option<(Vector, Vector)>> {
    let (d1, d2) = (line_direction(l1)?, line_direction(l2)?);
    let space = l1.space();
    let gap = sub(l2.base_point(), l1.base_point());
    // s ξ(d1,d1) - t ξ(d2,d1) = ξ(gap,d1),  s ξ(d1,d2) - t ξ(d2,d2) = ξ(gap,d2)
    let g = space.gram(&[d1.clone(), d2.clone()], &[d1.clone(), d2.clone()]);
    let system = Matrix::from_rows(vec![
        vec![g.get(0, 0).clone(), -g.get(1, 0)],
        vec![g.get(0, 1).clone(), -g.get(1, 1)],
    ])?;
    let rhs = vec![
        space.bilinear_eval(&gap, d1)?,
        space.bilinear_eval(&gap, d2)?,
    ];
    match crate::linalg::solve_affine(&system, &rhs)? {
        Some(sol) if sol.kernel.is_zero() => {
            let (s, t) = (&sol.point[0], &sol.point[1]);
            let mut q = l1.base_point().clone();
            crate::linalg::axpy(&mut q, s, d1);
            let mut p2 = l2.base_point().clone();
            crate::linalg::axpy(&mut p2, t, d2);
            Ok(Some((q, p2)))
        }
        _ => Ok(None),
    }
}

/// Feet `(q, p2)` of the common perpendicular of two ξ-orthogonal lines.
/// `q = p2` when the lines meet.
pub fn common_perpendicular_feet(l1: &AffineSubspace, l2: &AffineSubspace) -> Result<(Vector, Vector)> {
    l1.same_space(l2)?;
    let (d1, d2) = (line_direction(l1)?, line_direction(l2)?);
    if !l1.space().bilinear_eval(d1, d2)?.is_zero() {
        return Err(Error::Precondition("lines are not orthogonal".into()));
    }
    closest_feet(l1, l2)?.ok_or_else(|| Error::Internal("orthogonal lines cannot be parallel".into()))
}

/// How extra directions are picked from a complement subspace.
enum Pick<'a, R: ?Sized> {
    Canonical,
    Random(&'a Sampler, &'a mut R),
}

impl<R: Rng + ?Sized> Pick<'_, R> {
    fn take(&mut self, from: &LinearSubspace, count: usize) -> Result<LinearSubspace> {
        if count > from.rank() {
            return Err(Error::Generation {
                what: format!("{count} directions from a {}-dimensional complement", from.rank()),
                attempts: 1,
            });
        }
        match self {
            Pick::Canonical => LinearSubspace::span(from.basis()[..count].to_vec(), from.ambient_dim()),
            Pick::Random(sampler, rng) => sampler.subspace_in(&mut **rng, from, count),
        }
    }
}

/// `X1 ⊇ L1` through `q` and `X2 ⊇ L2` through `p2` containing `p2 - q`, with
/// every added direction ξ-orthogonal to what the other flat needs.
fn build_line_witness<R: Rng + ?Sized>(
    l1: &AffineSubspace,
    l2: &AffineSubspace,
    feet: (Vector, Vector),
    k1p: usize,
    k2: usize,
    pick: &mut Pick<'_, R>,
) -> Result<(AffineSubspace, AffineSubspace)> {
    let space = l1.space();
    let n = space.dim();
    let (d1, d2) = (line_direction(l1)?.clone(), line_direction(l2)?.clone());
    let (q, p2) = feet;
    let w = sub(&p2, &q);
    let base2 = LinearSubspace::span(vec![d2.clone(), w.clone()], n)?;
    let used = base2.extend(&[d1.clone()])?;
    let need2 = k2.checked_sub(base2.rank()).ok_or_else(|| Error::Generation {
        what: format!("{k2}-flat cannot hold the line and its common perpendicular"),
        attempts: 1,
    })?;
    let dir2 = base2.sum(&pick.take(&space.perp(&used), need2)?)?;
    let line1 = LinearSubspace::span(vec![d1], n)?;
    let dir1 = line1.sum(&pick.take(&space.perp(&dir2.sum(&line1)?), k1p - 1)?)?;
    let x1 = AffineSubspace::from_parts(space, q, dir1)?;
    let x2 = AffineSubspace::from_parts(space, p2, dir2)?;
    Ok((x1, x2))
}

fn check_lemma2_params(l1: &AffineSubspace, k1p: usize, k2: usize) -> Result<()> {
    if k1p < 1 || k2 < 2 {
        return Err(Error::Precondition(format!(
            "needs 1 <= k1 and 1 < k2, got ({k1p}, {k2})"
        )));
    }
    if k1p + k2 > l1.ambient_dim() {
        return Err(Error::Generation {
            what: format!(
                "no room for orthogonal {k1p}- and {k2}-flats in dimension {}",
                l1.ambient_dim()
            ),
            attempts: 1,
        });
    }
    Ok(())
}

/// For ξ-orthogonal lines, flats `X1 ⊇ L1`, `X2 ⊇ L2` of dimensions
/// `(k1p, k2)` with `X1 ⊥× X2`. Extra directions are the first canonical
/// basis vectors of the relevant complements.
pub fn lemma2_witness(
    l1: &AffineSubspace,
    l2: &AffineSubspace,
    k1p: usize,
    k2: usize,
) -> Result<(AffineSubspace, AffineSubspace)> {
    check_lemma2_params(l1, k1p, k2)?;
    let feet = common_perpendicular_feet(l1, l2)?;
    build_line_witness::<rand_chacha::ChaCha8Rng>(l1, l2, feet, k1p, k2, &mut Pick::Canonical)
}

/// [`lemma2_witness`] with randomly drawn extra directions.
pub fn lemma2_witness_random<R: Rng + ?Sized>(
    l1: &AffineSubspace,
    l2: &AffineSubspace,
    k1p: usize,
    k2: usize,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<(AffineSubspace, AffineSubspace)> {
    check_lemma2_params(l1, k1p, k2)?;
    let feet = common_perpendicular_feet(l1, l2)?;
    build_line_witness(l1, l2, feet, k1p, k2, &mut Pick::Random(sampler, rng))
}

/// Decides whether two lines are orthogonal using only the oracle.
///
/// Parallel lines are rejected from incidence alone. Otherwise the lines'
/// closest-point configuration yields candidate flats `(X1, X2)` of
/// dimensions `(k1 - m, k2)`; they coincide with the [`lemma2_witness`] output when the
/// lines are orthogonal, and no orthogonal pair contains the lines when they
/// are not, so the `⊥⁰` verdict on the candidates is the answer. The corner
/// `k1 = k2 = 1` translates `L2` onto `L1` and queries directly.
pub fn reconstruct_line_perp<O, R>(
    l1: &AffineSubspace,
    l2: &AffineSubspace,
    oracle: &O,
    mode: &ReconstructionMode,
    rng: &mut R,
) -> Result<bool>
where
    O: PerpOracle + ?Sized,
    R: Rng + ?Sized,
{
    if oracle.params().k1 > oracle.params().k2 {
        reconstruct_ordered(l2, l1, &Swapped(oracle), mode, rng)
    } else {
        reconstruct_ordered(l1, l2, oracle, mode, rng)
    }
}

fn reconstruct_ordered<O, R>(
    l1: &AffineSubspace,
    l2: &AffineSubspace,
    oracle: &O,
    mode: &ReconstructionMode,
    rng: &mut R,
) -> Result<bool>
where
    O: PerpOracle + ?Sized,
    R: Rng + ?Sized,
{
    let params = oracle.params();
    l1.same_space(l2)?;
    let n = l1.ambient_dim();
    if l1.dim() != 1 || l2.dim() != 1 {
        return Err(Error::Input("reconstruction compares two lines".into()));
    }
    if params.m >= params.k1 || !params.satisfiable_in(n) {
        return Err(Error::Input(format!(
            "parameters {params:?} are not usable in dimension {n}"
        )));
    }
    if l1.parallel(l2)? {
        return Ok(false);
    }
    let k1p = params.k1 - params.m;
    if params.k2 == 1 {
        let moved = l2.translate_through(l1.base_point())?;
        return decide_perp0(l1, &moved, oracle, mode, rng);
    }
    let feet = closest_feet(l1, l2)?.ok_or_else(|| Error::Internal("non-parallel lines without feet".into()))?;
    let (x1, x2) = build_line_witness::<R>(l1, l2, feet, k1p, params.k2, &mut Pick::Canonical)?;
    decide_perp0(&x1, &x2, oracle, mode, rng)
}

/// The reference verdict: line directions are ξ-orthogonal.
pub fn ground_truth_line_perp(l1: &AffineSubspace, l2: &AffineSubspace) -> Result<bool> {
    let (d1, d2) = (line_direction(l1)?, line_direction(l2)?);
    let origin = zero_vector(l1.ambient_dim());
    crate::orthogonality::perp_points(l1.space(), &origin, d1, &origin, d2)
}
