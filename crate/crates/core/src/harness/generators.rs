//! Instance generators steered toward the antecedents of the properties.

use std::sync::Arc;

use rand::Rng;

use crate::affine::AffineSubspace;
use crate::error::{Error, Result};
use crate::linalg::{LinearSubspace, QuadraticSpace};
use crate::orthogonality::{make_perp_pair, TypedPerpParams};
use crate::sample::Sampler;

/// A random flat of exact dimension `k`.
pub fn gen_subspace<R: Rng + ?Sized>(
    space: &Arc<QuadraticSpace>,
    sampler: &Sampler,
    k: usize,
    rng: &mut R,
) -> Result<AffineSubspace> {
    sampler.flat(rng, space, k)
}

/// A pair of flats of dimensions `k1`, `k2` whose meet has dimension exactly `m`.
///
/// Both flats contain a shared random `m`-flat and extend it by independent
/// directions; draws whose directions collapse are retried.
pub fn gen_pair_with_meet_dim<R: Rng + ?Sized>(
    space: &Arc<QuadraticSpace>,
    sampler: &Sampler,
    k1: usize,
    k2: usize,
    m: usize,
    rng: &mut R,
) -> Result<(AffineSubspace, AffineSubspace)> {
    let n = space.dim();
    let lo = (k1 + k2).saturating_sub(n);
    if k1 > n || k2 > n || m < lo || m > k1.min(k2) {
        return Err(Error::Input(format!(
            "no {k1}- and {k2}-flats meet in an {m}-flat in dimension {n}"
        )));
    }
    let full = LinearSubspace::full(n);
    let q = sampler.vector(rng, n);
    let meet = sampler.subspace_in(rng, &full, m)?;
    let e1 = sampler.subspace_avoiding(rng, &full, &meet, k1 - m)?;
    let used = meet.sum(&e1)?;
    let e2 = sampler.subspace_avoiding(rng, &full, &used, k2 - m)?;
    let x1 = AffineSubspace::from_parts(space, q.clone(), used)?;
    let x2 = AffineSubspace::from_parts(space, q, meet.sum(&e2)?)?;
    Ok((x1, x2))
}

/// `B = q + (M ⊕ Z)` with `q ∈ A`, `M` a `meet_dim`-subspace of `dir A` and
/// `Z` a `z_dim`-subspace of the ξ-complement of `dir A`. Every flat `B` with
/// `A ⊥g° B` has this shape.
pub fn go_partner<R: Rng + ?Sized>(
    a: &AffineSubspace,
    meet_dim: usize,
    z_dim: usize,
    through: Option<&[crate::Rational]>,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<AffineSubspace> {
    let q = match through {
        Some(q) => q.to_vec(),
        None => sampler.point_in(rng, a),
    };
    let meet = sampler.subspace_in(rng, a.direction(), meet_dim)?;
    let z = sampler.subspace_in(rng, &a.space().perp(a.direction()), z_dim)?;
    a.flat_through(&q, meet.sum(&z)?)
}

/// A random `⊥g` partner of `a` (requires `1 <= dim a <= n - 1`).
pub fn g_partner<R: Rng + ?Sized>(
    a: &AffineSubspace,
    through: Option<&[crate::Rational]>,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<AffineSubspace> {
    let (k, n) = (a.dim(), a.ambient_dim());
    if k == 0 || k == n {
        return Err(Error::Input(format!("a {k}-flat in dimension {n} has no ⊥g partner")));
    }
    let meet_dim = rng.gen_range(0..k);
    let z_dim = rng.gen_range(1..=n - k);
    go_partner(a, meet_dim, z_dim, through, sampler, rng)
}

/// A random `⊥g°` partner of `a`, including sub- and superflats.
pub fn any_go_partner<R: Rng + ?Sized>(
    a: &AffineSubspace,
    through: Option<&[crate::Rational]>,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<AffineSubspace> {
    let (k, n) = (a.dim(), a.ambient_dim());
    let meet_dim = rng.gen_range(0..=k);
    let z_dim = rng.gen_range(0..=n - k);
    go_partner(a, meet_dim, z_dim, through, sampler, rng)
}

/// A random flat `A` with `1 <= dim A <= n - 1`.
pub fn proper_flat<R: Rng + ?Sized>(
    space: &Arc<QuadraticSpace>,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<AffineSubspace> {
    let n = space.dim();
    if n < 2 {
        return Err(Error::Input("proper flats of positive dimension need n >= 2".into()));
    }
    let k = rng.gen_range(1..n);
    sampler.flat(rng, space, k)
}

/// Parameters `(m, k1, k2)` with `m < k1, k2 <= cap` and `k1 + k2 - m <= n`.
pub fn random_params<R: Rng + ?Sized>(n: usize, cap: usize, ordered: bool, rng: &mut R) -> Option<TypedPerpParams> {
    let mut all = Vec::new();
    for k1 in 1..=cap.min(n) {
        for k2 in 1..=cap.min(n) {
            if ordered && k1 > k2 {
                continue;
            }
            for m in 0..k1.min(k2) {
                if k1 + k2 - m <= n {
                    all.push(TypedPerpParams { m, k1, k2 });
                }
            }
        }
    }
    if all.is_empty() {
        None
    } else {
        Some(all[rng.gen_range(0..all.len())])
    }
}

/// A varied pair source: orthogonal pairs, nested pairs, general position
/// pairs with a prescribed meet, partners, translated and disjoint pairs.
pub fn mixed_pair<R: Rng + ?Sized>(
    space: &Arc<QuadraticSpace>,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<(AffineSubspace, AffineSubspace)> {
    let n = space.dim();
    let (a, b) = match rng.gen_range(0..6) {
        0 => match random_params(n, n, false, rng) {
            Some(p) => make_perp_pair(space, &p, sampler, rng)?,
            None => gen_pair_with_meet_dim(space, sampler, 0, 0, 0, rng)?,
        },
        1 => {
            let k1 = rng.gen_range(0..=n);
            let k2 = rng.gen_range(0..=n);
            let lo = (k1 + k2).saturating_sub(n);
            let m = rng.gen_range(lo..=k1.min(k2));
            gen_pair_with_meet_dim(space, sampler, k1, k2, m, rng)?
        }
        2 => {
            let big_dim = rng.gen_range(0..=n);
            let big = sampler.flat(rng, space, big_dim)?;
            let small_dim = rng.gen_range(0..=big.dim());
            let small = sampler.subflat(rng, &big, small_dim)?;
            (small, big)
        }
        3 => {
            let a_dim = rng.gen_range(0..=n);
            let a = sampler.flat(rng, space, a_dim)?;
            let b = any_go_partner(&a, None, sampler, rng)?;
            (a, b)
        }
        4 => {
            let (a, b) = match random_params(n, n, false, rng) {
                Some(p) => make_perp_pair(space, &p, sampler, rng)?,
                None => gen_pair_with_meet_dim(space, sampler, 0, 0, 0, rng)?,
            };
            let b = b.translate_through(&sampler.vector(rng, n))?;
            (a, b)
        }
        _ => {
            let a_dim = rng.gen_range(0..=n);
            let a = sampler.flat(rng, space, a_dim)?;
            let b_dim = rng.gen_range(0..=n);
            let b = sampler.flat(rng, space, b_dim)?;
            (a, b)
        }
    };
    Ok(if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
}

/// [`mixed_pair`] conditioned on a nonempty meet, or `None` after the retry budget.
pub fn mixed_meeting_pair<R: Rng + ?Sized>(
    space: &Arc<QuadraticSpace>,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<Option<(AffineSubspace, AffineSubspace)>> {
    for _ in 0..sampler.retries {
        let (a, b) = mixed_pair(space, sampler, rng)?;
        if a.meet(&b)?.is_some() {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// Two flats of dimensions in `1..n` meeting in a flat of smaller dimension
/// than either, neither containing the other. `None` when `n < 2`.
pub fn general_meeting_pair<R: Rng + ?Sized>(
    space: &Arc<QuadraticSpace>,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<Option<(AffineSubspace, AffineSubspace)>> {
    let n = space.dim();
    if n < 2 {
        return Ok(None);
    }
    let k1 = rng.gen_range(1..n);
    let k2 = rng.gen_range(1..n);
    let lo = (k1 + k2).saturating_sub(n);
    let hi = k1.min(k2) - 1;
    if lo > hi {
        return Ok(None);
    }
    let m = rng.gen_range(lo..=hi);
    gen_pair_with_meet_dim(space, sampler, k1, k2, m, rng).map(Some)
}

/// A flat `C` with `inner ⊆ C ⊆ outer`, `dim C` drawn from `lo..=hi`,
/// passing through the base point of `inner`.
pub fn between<R: Rng + ?Sized>(
    inner: &AffineSubspace,
    outer: &AffineSubspace,
    lo: usize,
    hi: usize,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<AffineSubspace> {
    let lo = lo.max(inner.dim());
    let hi = hi.min(outer.dim());
    if lo > hi {
        return Err(Error::Input("empty dimension range between flats".into()));
    }
    let k = rng.gen_range(lo..=hi);
    let extra = sampler.subspace_avoiding(rng, outer.direction(), inner.direction(), k - inner.dim())?;
    inner.flat_through(inner.base_point(), inner.direction().sum(&extra)?)
}

/// A chain `A ⊊ B ⊊ C` of random flats (requires `n >= 2`).
pub fn proper_chain<R: Rng + ?Sized>(
    space: &Arc<QuadraticSpace>,
    sampler: &Sampler,
    rng: &mut R,
) -> Result<(AffineSubspace, AffineSubspace, AffineSubspace)> {
    let n = space.dim();
    let c_dim = rng.gen_range(2..=n);
    let c = sampler.flat(rng, space, c_dim)?;
    let b_dim = rng.gen_range(1..c_dim);
    let b = sampler.subflat(rng, &c, b_dim)?;
    let a_dim = rng.gen_range(0..b.dim());
    let a = sampler.subflat(rng, &b, a_dim)?;
    Ok((a, b, c))
}

/// Two random lines; when `orthogonal`, the second direction is drawn from
/// the ξ-complement of the first and the lines are usually skew.
pub fn line_pair<R: Rng + ?Sized>(
    space: &Arc<QuadraticSpace>,
    sampler: &Sampler,
    orthogonal: bool,
    rng: &mut R,
) -> Result<(AffineSubspace, AffineSubspace)> {
    let n = space.dim();
    let l1 = sampler.flat(rng, space, 1)?;
    let within = if orthogonal {
        space.perp(l1.direction())
    } else {
        LinearSubspace::full(n)
    };
    let d2 = sampler.subspace_in(rng, &within, 1)?;
    let through = if rng.gen_bool(0.25) {
        sampler.point_in(rng, &l1)
    } else {
        sampler.vector(rng, n)
    };
    let l2 = AffineSubspace::from_parts(space, through, d2)?;
    Ok((l1, l2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonality::{perp_g, perp_go};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(n: usize) -> (Arc<QuadraticSpace>, Sampler, ChaCha8Rng) {
        (
            Arc::new(QuadraticSpace::tridiagonal(n).unwrap()),
            Sampler::default(),
            ChaCha8Rng::seed_from_u64(n as u64),
        )
    }

    #[test]
    fn pair_with_meet_dim_examples() {
        let (s, sampler, mut rng) = setup(3);
        let (x1, x2) = gen_pair_with_meet_dim(&s, &sampler, 2, 2, 1, &mut rng).unwrap();
        assert_eq!(x1.meet(&x2).unwrap().unwrap().dim(), 1);
        let (l1, l2) = gen_pair_with_meet_dim(&s, &sampler, 1, 1, 1, &mut rng).unwrap();
        assert_eq!(l1, l2);
        assert!(matches!(
            gen_pair_with_meet_dim(&s, &sampler, 2, 2, 0, &mut rng),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn pair_with_meet_dim_covers_range() {
        let (s, sampler, mut rng) = setup(5);
        for k1 in 0..=5usize {
            for k2 in 0..=5 {
                for m in (k1 + k2).saturating_sub(5)..=k1.min(k2) {
                    let (a, b) = gen_pair_with_meet_dim(&s, &sampler, k1, k2, m, &mut rng).unwrap();
                    assert_eq!((a.dim(), b.dim()), (k1, k2));
                    assert_eq!(a.meet(&b).unwrap().unwrap().dim(), m);
                }
            }
        }
    }

    #[test]
    fn gen_subspace_is_deterministic() {
        let (s, sampler, _) = setup(4);
        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            gen_subspace(&s, &sampler, 2, &mut rng).unwrap()
        };
        assert_eq!(draw(), draw());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(gen_subspace(&s, &sampler, 0, &mut rng).unwrap().is_point());
        assert_eq!(gen_subspace(&s, &sampler, 4, &mut rng).unwrap(), AffineSubspace::whole(&s));
    }

    #[test]
    fn partners_are_related() {
        let (s, sampler, mut rng) = setup(5);
        for _ in 0..50 {
            let a = proper_flat(&s, &sampler, &mut rng).unwrap();
            let b = g_partner(&a, None, &sampler, &mut rng).unwrap();
            assert!(perp_g(&a, &b).unwrap());
            let c = any_go_partner(&a, None, &sampler, &mut rng).unwrap();
            assert!(perp_go(&a, &c).unwrap());
        }
    }
}
