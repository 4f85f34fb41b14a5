use std::sync::Arc;

use orthokernel::harness::generators::{general_meeting_pair, mixed_pair};
use orthokernel::harness::{trial_rng, FormSource, GenConfig};
use orthokernel::linalg::{add, int_vector, rank, scale, sub, unit_vector, zero_vector};
use orthokernel::orthogonality::{
    make_perp_pair, orthoadjacent, perp_g, perp_go, perp_go_at, perp_m, reflection, reflections_commute,
    unique_complement, Side,
};
use orthokernel::{AffineSubspace, Error, QuadraticSpace, Rational, Sampler, TypedPerpParams, Vector};
use proptest::prelude::*;

fn euclid(n: usize) -> Arc<QuadraticSpace> {
    Arc::new(QuadraticSpace::euclidean(n).unwrap())
}

fn flat(s: &Arc<QuadraticSpace>, p: &[i64], dirs: &[&[i64]]) -> AffineSubspace {
    AffineSubspace::new(s, int_vector(p), dirs.iter().map(|d| int_vector(d)).collect()).unwrap()
}

fn setup(n: usize, form: usize, seed: u64) -> (Arc<QuadraticSpace>, Sampler) {
    let source = match form {
        0 => FormSource::Identity,
        1 => FormSource::graded(n),
        _ => FormSource::tridiagonal(n),
    };
    GenConfig::new(n, source, seed).materialize().unwrap()
}

/// `X1 ⊥g° X2` by dimension counting. With `M = D1 ∩ D2`, the relation
/// holds iff `D1 ∩ D2^⊥` has dimension `dim D1 - dim M`, and
/// `dim(D1 ∩ D2^⊥) = dim D1 - rank Gram(D1, D2)`.
fn oracle_perp_go(x1: &AffineSubspace, x2: &AffineSubspace) -> bool {
    let n = x1.ambient_dim();
    let (b1, b2) = (x1.direction().basis(), x2.direction().basis());
    let both: Vec<Vector> = b1.iter().chain(b2).cloned().collect();
    let mut with_gap = both.clone();
    with_gap.push(sub(x2.base_point(), x1.base_point()));
    if rank(&with_gap, n) != rank(&both, n) {
        return false;
    }
    let meet_dim = b1.len() + b2.len() - rank(&both, n);
    let gram = x1.space().gram(b1, b2);
    rank(gram.rows(), b2.len()) <= meet_dim
}

fn oracle_subset(a: &AffineSubspace, b: &AffineSubspace) -> bool {
    let n = a.ambient_dim();
    let mut rows = b.direction().basis().to_vec();
    let r = rank(&rows, n);
    rows.extend(a.direction().basis().iter().cloned());
    rows.push(sub(a.base_point(), b.base_point()));
    rank(&rows, n) == r
}

fn q_norm(s: &QuadraticSpace, v: &[Rational]) -> Rational {
    s.bilinear_eval(v, v).unwrap()
}

#[test]
fn coordinate_planes_in_q3() {
    let s = euclid(3);
    let xy = flat(&s, &[0, 0, 0], &[&[1, 0, 0], &[0, 1, 0]]);
    let xz = flat(&s, &[0, 0, 0], &[&[1, 0, 0], &[0, 0, 1]]);
    let x = flat(&s, &[0, 0, 0], &[&[1, 0, 0]]);
    let origin = zero_vector(3);
    assert!(perp_go(&xy, &xz).unwrap());
    assert!(oracle_perp_go(&xy, &xz));
    assert!(perp_go_at(&xy, &xz, &origin, Side::First).unwrap());
    assert!(perp_go_at(&xy, &xz, &origin, Side::Second).unwrap());
    assert!(perp_g(&xy, &xz).unwrap());
    assert!(perp_m(&xy, &xz, &TypedPerpParams::new(1, 2, 2).unwrap()).unwrap());
    assert!(orthoadjacent(&xy, &xz, 2).unwrap());
    assert!(!perp_m(&xy, &xz, &TypedPerpParams::new(0, 2, 2).unwrap()).unwrap());

    assert!(perp_go(&x, &xy).unwrap());
    assert!(perp_go(&xy, &x).unwrap());
    assert!(!perp_g(&x, &xy).unwrap());
}

#[test]
fn tilted_plane_is_not_orthogonal() {
    let s = euclid(3);
    let xy = flat(&s, &[0, 0, 0], &[&[1, 0, 0], &[0, 1, 0]]);
    let tilted = flat(&s, &[0, 0, 0], &[&[1, 0, 0], &[0, 1, 1]]);
    assert!(!perp_go(&xy, &tilted).unwrap());
    assert!(!oracle_perp_go(&xy, &tilted));
    let lifted = flat(&s, &[0, 0, 5], &[&[1, 0, 0], &[0, 1, 0]]);
    assert!(!perp_go(&xy, &lifted).unwrap());
}

#[test]
fn non_commuting_reflections_in_the_plane() {
    // Plain integer 2×2 arithmetic: the reflection in the x-axis is diag(1, -1),
    // the reflection in span{e1 + e2} swaps the coordinates.
    let rx = [[1i64, 0], [0, -1]];
    let rd = [[0i64, 1], [1, 0]];
    let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
        let mut c = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        c
    };
    assert_ne!(mul(rx, rd), mul(rd, rx));

    let s = euclid(2);
    let x = flat(&s, &[0, 0], &[&[1, 0]]);
    let d = flat(&s, &[0, 0], &[&[1, 1]]);
    let to_int = |m: &orthokernel::Matrix| {
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let v = m.get(i, j);
                assert!(v.is_integer());
                *e = i64::try_from(v.numer()).unwrap();
            }
        }
        out
    };
    assert_eq!(to_int(reflection(&x).matrix()), rx);
    assert_eq!(to_int(reflection(&d).matrix()), rd);
    assert!(!reflections_commute(&x, &d).unwrap());
}

#[test]
fn unique_complement_of_plane_in_space() {
    let s = euclid(3);
    let a = flat(&s, &[0, 0, 0], &[&[1, 0, 0]]);
    let b = flat(&s, &[0, 0, 0], &[&[1, 0, 0], &[0, 1, 0]]);
    let c = AffineSubspace::whole(&s);
    let bp = unique_complement(&a, &b, &c).unwrap();
    assert_eq!(bp, flat(&s, &[0, 0, 0], &[&[1, 0, 0], &[0, 0, 1]]));
    assert_eq!(b.meet(&bp).unwrap(), Some(a.clone()));
    assert!(perp_g(&b, &bp).unwrap());
    assert_eq!(b.join(&bp).unwrap(), c);
    assert!(matches!(unique_complement(&b, &a, &c), Err(Error::Precondition(_))));
}

#[test]
fn perp_pair_refuses_exactly_when_too_large() {
    let (s, sampler) = setup(3, 0, 1);
    let mut rng = trial_rng(1, "pairs", 0);
    let ok = TypedPerpParams::new(1, 2, 2).unwrap();
    let (x1, x2) = make_perp_pair(&s, &ok, &sampler, &mut rng).unwrap();
    assert_eq!(x1.meet(&x2).unwrap().unwrap().dim(), 1);
    assert!(oracle_perp_go(&x1, &x2));
    assert!(matches!(
        make_perp_pair(&s, &TypedPerpParams::new(0, 2, 2).unwrap(), &sampler, &mut rng),
        Err(Error::Unsatisfiable { required: 4, dim: 3 })
    ));
    assert!(TypedPerpParams::new(2, 2, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fast_literal_and_counting_routes_agree(n in 1usize..=5, form in 0usize..3, seed in any::<u64>()) {
        let (s, sampler) = setup(n, form, seed);
        let mut rng = trial_rng(seed, "routes", 0);
        let (a, b) = mixed_pair(&s, &sampler, &mut rng).unwrap();
        let fast = perp_go(&a, &b).unwrap();
        prop_assert_eq!(fast, oracle_perp_go(&a, &b));
        if let Some(meet) = a.meet(&b).unwrap() {
            let q = sampler.point_in(&mut rng, &meet);
            prop_assert_eq!(perp_go_at(&a, &b, &q, Side::First).unwrap(), fast);
            prop_assert_eq!(perp_go_at(&a, &b, &q, Side::Second).unwrap(), fast);
        }
        let g = perp_g(&a, &b).unwrap();
        prop_assert_eq!(g, fast && !oracle_subset(&a, &b) && !oracle_subset(&b, &a));
        prop_assert_eq!(g, perp_g(&b, &a).unwrap());
    }

    #[test]
    fn perp_pairs_meet_in_the_requested_dimension(n in 1usize..=6, form in 0usize..3, seed in any::<u64>()) {
        let (s, sampler) = setup(n, form, seed);
        let mut rng = trial_rng(seed, "typed", 0);
        if let Some(p) = orthokernel::harness::generators::random_params(n, n, false, &mut rng) {
            let (x1, x2) = make_perp_pair(&s, &p, &sampler, &mut rng).unwrap();
            prop_assert_eq!((x1.dim(), x2.dim()), (p.k1, p.k2));
            prop_assert_eq!(x1.meet(&x2).unwrap().unwrap().dim(), p.m);
            prop_assert_eq!(x1.join(&x2).unwrap().dim(), p.join_dim());
            prop_assert!(oracle_perp_go(&x1, &x2));
            prop_assert!(perp_m(&x2, &x1, &p.swapped()).unwrap());
        }
    }

    #[test]
    fn reflection_is_an_involutive_isometry_fixing_its_flat(
        n in 1usize..=5, form in 0usize..3, seed in any::<u64>()
    ) {
        let (s, sampler) = setup(n, form, seed);
        let mut rng = trial_rng(seed, "reflect", 0);
        let k = rand::Rng::gen_range(&mut rng, 0..=n);
        let x = sampler.flat(&mut rng, &s, k).unwrap();
        let r = reflection(&x);
        prop_assert!(r.compose(&r).unwrap().is_identity());
        let (p, q) = (sampler.vector(&mut rng, n), sampler.vector(&mut rng, n));
        let (rp, rq) = (r.apply(&p).unwrap(), r.apply(&q).unwrap());
        prop_assert_eq!(q_norm(&s, &sub(&rp, &rq)), q_norm(&s, &sub(&p, &q)));
        // The midpoint of p and its image lies on x; the displacement is ξ-orthogonal to x.
        let half = Rational::new(1, 2);
        prop_assert!(x.contains(&scale(&half, &add(&p, &rp))).unwrap());
        for d in x.direction().basis() {
            prop_assert!(s.bilinear_eval(d, &sub(&rp, &p)).unwrap().is_zero());
        }
        let on_x = sampler.point_in(&mut rng, &x);
        prop_assert_eq!(r.apply(&on_x).unwrap(), on_x);
    }

    #[test]
    fn meeting_reflections_commute_iff_orthogonal(n in 2usize..=4, form in 0usize..3, seed in any::<u64>()) {
        let (s, sampler) = setup(n, form, seed);
        let mut rng = trial_rng(seed, "refl-meet", 0);
        if let Some((a, b)) = general_meeting_pair(&s, &sampler, &mut rng).unwrap() {
            prop_assert_eq!(reflections_commute(&a, &b).unwrap(), oracle_perp_go(&a, &b));
        }
    }
}

#[test]
fn axis_reflection_in_q3_negates_other_coordinates() {
    let s = euclid(3);
    let x = flat(&s, &[0, 0, 0], &[&[1, 0, 0]]);
    let img = reflection(&x).apply(&int_vector(&[2, 3, -1])).unwrap();
    assert_eq!(img, int_vector(&[2, -3, 1]));
    let p = reflection(&AffineSubspace::point(&s, unit_vector(3, 2)).unwrap());
    assert_eq!(p.apply(&zero_vector(3)).unwrap(), int_vector(&[0, 0, 2]));
}
