use std::sync::Arc;

use orthokernel::harness::generators::{line_pair, random_params};
use orthokernel::harness::{gen_pair_with_meet_dim, trial_rng, FormSource, GenConfig};
use orthokernel::linalg::{int_vector, rank, sub, unit_vector, zero_vector};
use orthokernel::orthogonality::make_perp_pair;
use orthokernel::reconstruction::{
    common_perpendicular_feet, decide_perp0, lemma1_witness, lemma2_witness, lemma2_witness_random,
    reconstruct_line_perp, CountingOracle, GroundTruthOracle, ReconstructionMode,
};
use orthokernel::{AffineSubspace, Error, QuadraticSpace, Sampler, TypedPerpParams, Vector};
use proptest::prelude::*;
use rand::Rng;

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

fn oracle(m: usize, k1: usize, k2: usize) -> GroundTruthOracle {
    GroundTruthOracle {
        params: TypedPerpParams::new(m, k1, k2).unwrap(),
    }
}

/// `X ⊥× Y` by counting: the flats meet in exactly one point and the Gram
/// matrix of their directions vanishes.
fn oracle_perp_x(x: &AffineSubspace, y: &AffineSubspace) -> bool {
    let n = x.ambient_dim();
    let (bx, by) = (x.direction().basis(), y.direction().basis());
    let both: Vec<Vector> = bx.iter().chain(by).cloned().collect();
    let mut with_gap = both.clone();
    with_gap.push(sub(y.base_point(), x.base_point()));
    let meets_in_point = rank(&both, n) == bx.len() + by.len() && rank(&with_gap, n) == rank(&both, n);
    let gram = x.space().gram(bx, by);
    meets_in_point && gram.rows().iter().flatten().all(|e| e.is_zero())
}

fn lines_orthogonal(l1: &AffineSubspace, l2: &AffineSubspace) -> bool {
    let (d1, d2) = (&l1.direction().basis()[0], &l2.direction().basis()[0]);
    l1.space().bilinear_eval(d1, d2).unwrap().is_zero()
}

fn meet_dim(a: &AffineSubspace, b: &AffineSubspace) -> Option<usize> {
    a.meet(b).unwrap().map(|m| m.dim())
}

#[test]
fn lemma1_witness_in_q4() {
    let s = euclid(4);
    let y1 = flat(&s, &[0, 0, 0, 0], &[&[0, 0, 1, 0]]);
    let x2 = flat(&s, &[0, 0, 0, 0], &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let x1 = lemma1_witness(&y1, &x2, 1).unwrap();
    assert_eq!(x1, flat(&s, &[0, 0, 0, 0], &[&[1, 0, 0, 0], &[0, 0, 1, 0]]));
    assert!(y1.is_subset_of(&x1).unwrap());
    assert_eq!(x1.dim(), 2);
    let t = x1.meet(&x2).unwrap().unwrap();
    assert_eq!(t.dim(), 1);
    assert!(s.subspaces_orthogonal(t.direction(), y1.direction()));
    assert_eq!(lemma1_witness(&y1, &x2, 0).unwrap(), y1);
    assert!(matches!(lemma1_witness(&y1, &x2, 3), Err(Error::Precondition(_))));
}

#[test]
fn decide_perp0_on_an_orthogonal_instance() {
    let (s, sampler) = setup(4, 0, 3);
    let mut rng = trial_rng(3, "perp0", 0);
    let (y1, x2) = make_perp_pair(&s, &TypedPerpParams::new(0, 1, 2).unwrap(), &sampler, &mut rng).unwrap();
    assert!(oracle_perp_x(&y1, &x2));
    let o = oracle(1, 2, 2);
    assert!(decide_perp0(&y1, &x2, &o, &ReconstructionMode::Witness, &mut rng).unwrap());
    let sampled = ReconstructionMode::sampled(20, sampler).unwrap();
    assert!(decide_perp0(&y1, &x2, &o, &sampled, &mut rng).unwrap());
}

#[test]
fn decide_perp0_rejects_a_tilted_line() {
    let s = euclid(3);
    let x2 = flat(&s, &[0, 0, 0], &[&[1, 0, 0], &[0, 1, 0]]);
    let y1 = flat(&s, &[0, 0, 0], &[&[1, 1, 1]]);
    assert!(!oracle_perp_x(&y1, &x2));
    let mut rng = trial_rng(0, "tilt", 0);
    assert!(!decide_perp0(&y1, &x2, &oracle(1, 2, 2), &ReconstructionMode::Witness, &mut rng).unwrap());
    // With m = 0 the stage asks about Y1 itself.
    let counting_base = oracle(0, 1, 2);
    let counting = CountingOracle::new(&counting_base);
    assert!(!decide_perp0(&y1, &x2, &counting, &ReconstructionMode::Witness, &mut rng).unwrap());
    assert_eq!(counting.queries(), 1);
}

#[test]
fn lemma2_witness_for_skew_axes() {
    let s = euclid(3);
    let l1 = flat(&s, &[0, 0, 0], &[&[1, 0, 0]]);
    let l2 = flat(&s, &[0, 0, 1], &[&[0, 1, 0]]);
    assert_eq!(common_perpendicular_feet(&l1, &l2).unwrap(), (zero_vector(3), unit_vector(3, 2)));
    let (x1, x2) = lemma2_witness(&l1, &l2, 1, 2).unwrap();
    assert_eq!(x1, l1);
    assert_eq!(x2, flat(&s, &[0, 0, 1], &[&[0, 1, 0], &[0, 0, 1]]));
    assert!(x2.contains(&zero_vector(3)).unwrap());
    assert!(oracle_perp_x(&x1, &x2));
}

#[test]
fn lemma2_witness_for_meeting_axes() {
    let s = euclid(3);
    let l1 = flat(&s, &[0, 0, 0], &[&[1, 0, 0]]);
    let l2 = flat(&s, &[0, 0, 0], &[&[0, 1, 0]]);
    let (x1, x2) = lemma2_witness(&l1, &l2, 1, 2).unwrap();
    assert_eq!(x1, l1);
    assert_eq!(x2.dim(), 2);
    assert!(l2.is_subset_of(&x2).unwrap());
    assert!(oracle_perp_x(&x1, &x2));
    assert!(matches!(lemma2_witness(&l1, &l2, 1, 1), Err(Error::Precondition(_))));
    assert!(matches!(lemma2_witness(&l1, &l1, 1, 2), Err(Error::Precondition(_))));
}

#[test]
fn reconstruct_rejects_a_diagonal_line() {
    let s = euclid(4);
    let (_, sampler) = setup(4, 0, 0);
    let l1 = flat(&s, &[0, 0, 0, 0], &[&[1, 0, 0, 0]]);
    let l2 = flat(&s, &[0, 0, 0, 0], &[&[1, 1, 0, 0]]);
    assert!(!lines_orthogonal(&l1, &l2));
    let o = oracle(1, 2, 2);
    let mut rng = trial_rng(0, "diag", 0);
    for mode in [ReconstructionMode::Witness, ReconstructionMode::sampled(10, sampler).unwrap()] {
        assert!(!reconstruct_line_perp(&l1, &l2, &o, &mode, &mut rng).unwrap());
    }
}

#[test]
fn reconstruct_accepts_a_skew_orthogonal_pair() {
    let (s, sampler) = setup(5, 0, 9);
    let mut rng = trial_rng(9, "skew", 0);
    let (l1, l2) = make_perp_pair(&s, &TypedPerpParams::new(0, 1, 1).unwrap(), &sampler, &mut rng).unwrap();
    let l2 = l2.translate_through(&sampler.vector(&mut rng, 5)).unwrap();
    assert_eq!(l1.meet(&l2).unwrap(), None);
    assert!(lines_orthogonal(&l1, &l2));
    let verdict = reconstruct_line_perp(&l1, &l2, &oracle(1, 2, 3), &ReconstructionMode::Witness, &mut rng);
    assert!(verdict.unwrap());
}

#[test]
fn reconstruct_on_orthogonal_axes_in_the_plane() {
    let s = euclid(2);
    let l1 = flat(&s, &[0, 0], &[&[1, 0]]);
    let l2 = flat(&s, &[3, 1], &[&[0, 1]]);
    let mut rng = trial_rng(0, "plane", 0);
    assert!(reconstruct_line_perp(&l1, &l2, &oracle(0, 1, 1), &ReconstructionMode::Witness, &mut rng).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn lemma1_witness_post_conditions(n in 2usize..=6, form in 0usize..3, seed in any::<u64>()) {
        let (s, sampler) = setup(n, form, seed);
        let mut rng = trial_rng(seed, "lemma1", 0);
        let Some(p) = random_params(n, n, true, &mut rng) else { return Ok(()); };
        let (y1, x2) = gen_pair_with_meet_dim(&s, &sampler, p.k1 - p.m, p.k2, 0, &mut rng).unwrap();
        let x1 = lemma1_witness(&y1, &x2, p.m).unwrap();
        prop_assert!(y1.is_subset_of(&x1).unwrap());
        prop_assert_eq!(x1.dim(), p.k1);
        prop_assert_eq!(meet_dim(&x1, &x2), Some(p.m));
        let verdict = decide_perp0(&y1, &x2, &GroundTruthOracle { params: p }, &ReconstructionMode::Witness, &mut rng);
        prop_assert_eq!(verdict.unwrap(), oracle_perp_x(&y1, &x2));
    }

    #[test]
    fn lemma2_witness_post_conditions(n in 3usize..=6, form in 0usize..3, seed in any::<u64>()) {
        let (s, sampler) = setup(n, form, seed);
        let mut rng = trial_rng(seed, "lemma2", 0);
        let (l1, l2) = line_pair(&s, &sampler, true, &mut rng).unwrap();
        let k2 = rng.gen_range(2..n);
        let k1p = rng.gen_range(1..=n - k2);
        let (x1, x2) = if rng.gen_bool(0.5) {
            lemma2_witness(&l1, &l2, k1p, k2).unwrap()
        } else {
            lemma2_witness_random(&l1, &l2, k1p, k2, &sampler, &mut rng).unwrap()
        };
        prop_assert_eq!((x1.dim(), x2.dim()), (k1p, k2));
        prop_assert!(l1.is_subset_of(&x1).unwrap() && l2.is_subset_of(&x2).unwrap());
        prop_assert!(oracle_perp_x(&x1, &x2));
    }

    #[test]
    fn reconstruction_matches_line_orthogonality(n in 2usize..=6, form in 0usize..3, seed in any::<u64>()) {
        let (s, sampler) = setup(n, form, seed);
        let mut rng = trial_rng(seed, "recon", 0);
        let Some(p) = random_params(n, n, true, &mut rng) else { return Ok(()); };
        let orthogonal = rng.gen_bool(0.5);
        let (l1, l2) = line_pair(&s, &sampler, orthogonal, &mut rng).unwrap();
        let o = GroundTruthOracle { params: p };
        let witness = reconstruct_line_perp(&l1, &l2, &o, &ReconstructionMode::Witness, &mut rng).unwrap();
        prop_assert_eq!(witness, lines_orthogonal(&l1, &l2));
        let sampled = ReconstructionMode::sampled(5, sampler).unwrap();
        // A sampled `true` can be wrong, a sampled `false` never is.
        if !reconstruct_line_perp(&l1, &l2, &o, &sampled, &mut rng).unwrap() {
            prop_assert!(!witness);
        }
    }
}
