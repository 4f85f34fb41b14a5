//! The property registry. Properties with rare antecedents build their
//! instances constructively instead of rejecting random draws.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::generators::{
    any_go_partner, between, g_partner, gen_pair_with_meet_dim, general_meeting_pair, line_pair, mixed_meeting_pair, mixed_pair, proper_chain,
    proper_flat, random_params,
};
use super::{Outcome, TrialContext};
use crate::affine::AffineSubspace;
use crate::error::{Error, Result};
use crate::linalg::LinearSubspace;
use crate::orthogonality::{
    make_perp_pair, perp_g, perp_go, perp_go_at, perp_m, perp_x, reflections_commute, unique_complement, Side,
    TypedPerpParams,
};
use crate::reconstruction::{
    decide_perp0, ground_truth_line_perp, lemma1_witness, lemma2_witness, lemma2_witness_random,
    reconstruct_line_perp, sample_lemma1_candidate, GroundTruthOracle, PerpOracle, ReconstructionMode,
};

type PropertyFn = fn(&TrialContext, &mut ChaCha8Rng) -> Result<Outcome>;

const REGISTRY: &[(&str, PropertyFn)] = &[
    ("P-AXO-A", axo_a),
    ("P-AXO-B", axo_b),
    ("P-AXO-C", axo_c),
    ("P-AXO-D", axo_d),
    ("P-AXO-E", axo_e),
    ("P-AXO-F", axo_f),
    ("P-AXO-G", axo_g),
    ("P-AXO-H", axo_h),
    ("P-COSIK", cosik),
    ("P-COSIK2", cosik2),
    ("P-GGO", ggo),
    ("P-GO-Q-INDEP", go_q_indep),
    ("P-ISO", iso),
    ("P-LEM1-BWD", lem1_bwd),
    ("P-LEM1-FWD", lem1_fwd),
    ("P-LEM2", lem2),
    ("P-MEET-NONEMPTY", meet_nonempty),
    ("P-MEETPROP", meetprop),
    ("P-MODE-CONSIST", mode_consist),
    ("P-NOINC", noinc),
    ("P-NONTRIV", nontriv),
    ("P-PAR", par),
    ("P-PERPXSUP", perpxsup),
    ("P-POINTMEET", pointmeet),
    ("P-RECON", recon),
    ("P-REFL", refl),
    ("P-SQCUP", sqcup),
    ("P-SYM", sym),
    ("P-UNIQ", uniq),
];

/// The lattice and orthogonality axioms checked over the default forms.
pub const AXIOM_PROPERTIES: &[&str] = &[
    "P-SYM",
    "P-MEET-NONEMPTY",
    "P-PAR",
    "P-NOINC",
    "P-UNIQ",
    "P-POINTMEET",
    "P-PERPXSUP",
    "P-REFL",
    "P-ISO",
    "P-GGO",
    "P-GO-Q-INDEP",
    "P-SQCUP",
    "P-COSIK2",
    "P-COSIK",
    "P-MEETPROP",
    "P-AXO-A",
    "P-AXO-B",
    "P-AXO-C",
    "P-AXO-D",
    "P-AXO-E",
    "P-AXO-F",
    "P-AXO-G",
    "P-AXO-H",
];

/// Every registered property id, sorted.
pub fn property_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|(id, _)| *id).collect()
}

pub(super) fn lookup(id: &str) -> Option<PropertyFn> {
    REGISTRY.iter().find(|(k, _)| *k == id).map(|(_, f)| *f)
}

type Flat = AffineSubspace;

fn vacuous_below(cx: &TrialContext, n: usize) -> bool {
    cx.dim() < n
}

/// `A ⊥g B` with `A` proper, built from a random partner.
fn perp_g_pair(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<(Flat, Flat)> {
    let a = proper_flat(&cx.space, &cx.sampler, rng)?;
    let b = g_partner(&a, None, &cx.sampler, rng)?;
    Ok((a, b))
}

fn meet_of(a: &Flat, b: &Flat) -> Result<Flat> {
    a.meet(b)?
        .ok_or_else(|| Error::Internal("constructed partners do not meet".into()))
}

fn sym(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (a, b) = mixed_pair(&cx.space, &cx.sampler, rng)?;
    let g = [perp_g(&a, &b)?, perp_g(&b, &a)?];
    Ok(Outcome::expect(g[0] == g[1], || json!({ "A": a, "B": b, "perp_g": g })))
}

fn axo_a(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (a, b) = mixed_pair(&cx.space, &cx.sampler, rng)?;
    let go = [perp_go(&a, &b)?, perp_go(&b, &a)?];
    Ok(Outcome::expect(go[0] == go[1], || json!({ "A": a, "B": b, "perp_go": go })))
}

fn meet_nonempty(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (a, b) = if cx.dim() >= 2 && rng.gen_bool(0.5) {
        perp_g_pair(cx, rng)?
    } else {
        mixed_pair(&cx.space, &cx.sampler, rng)?
    };
    if !perp_g(&a, &b)? {
        return Ok(Outcome::Vacuous);
    }
    let meets = a.meet(&b)?.is_some();
    Ok(Outcome::expect(meets, || json!({ "A": a, "B": b })))
}

fn axo_b(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (a, b) = if rng.gen_bool(0.5) {
        let a_dim = rng.gen_range(0..=cx.dim());
        let a = cx.sampler.flat(rng, &cx.space, a_dim)?;
        let b = any_go_partner(&a, None, &cx.sampler, rng)?;
        (a, b)
    } else {
        mixed_pair(&cx.space, &cx.sampler, rng)?
    };
    if !perp_go(&a, &b)? {
        return Ok(Outcome::Vacuous);
    }
    let meets = a.meet(&b)?.is_some();
    Ok(Outcome::expect(meets, || json!({ "A": a, "B": b })))
}

/// `C ∥ B`, usually through a point of `A`.
fn parallel_through<R: Rng + ?Sized>(cx: &TrialContext, a: &Flat, b: &Flat, rng: &mut R) -> Result<Flat> {
    let q = if rng.gen_bool(0.75) {
        cx.sampler.point_in(rng, a)
    } else {
        cx.sampler.vector(rng, cx.dim())
    };
    b.translate_through(&q)
}

fn par_with(
    cx: &TrialContext,
    rng: &mut ChaCha8Rng,
    a: Flat,
    b: Flat,
    rel: fn(&Flat, &Flat) -> Result<bool>,
) -> Result<Outcome> {
    let c = parallel_through(cx, &a, &b, rng)?;
    if !rel(&a, &b)? || !b.parallel(&c)? || a.meet(&c)?.is_none() {
        return Ok(Outcome::Vacuous);
    }
    let holds = rel(&a, &c)?;
    Ok(Outcome::expect(holds, || json!({ "A": a, "B": b, "C": c })))
}

fn par(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    if vacuous_below(cx, 2) {
        return Ok(Outcome::Vacuous);
    }
    let (a, b) = perp_g_pair(cx, rng)?;
    par_with(cx, rng, a, b, perp_g)
}

fn axo_c(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let a_dim = rng.gen_range(0..=cx.dim());
    let a = cx.sampler.flat(rng, &cx.space, a_dim)?;
    let b = any_go_partner(&a, None, &cx.sampler, rng)?;
    par_with(cx, rng, a, b, perp_go)
}

fn noinc(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let b_dim = rng.gen_range(1..=cx.dim());
    let b = cx.sampler.flat(rng, &cx.space, b_dim)?;
    let a_dim = rng.gen_range(1..=b.dim());
    let a = cx.sampler.subflat(rng, &b, a_dim)?;
    let g = [perp_g(&a, &b)?, perp_g(&b, &a)?];
    Ok(Outcome::expect(!g[0] && !g[1], || json!({ "A": a, "B": b, "perp_g": g })))
}

/// Checks `unique_complement` against its three defining clauses, then
/// checks that sampled alternatives satisfying the clauses coincide with it.
fn uniq_with(cx: &TrialContext, rng: &mut ChaCha8Rng, rel: fn(&Flat, &Flat) -> Result<bool>) -> Result<Outcome> {
    if vacuous_below(cx, 2) {
        return Ok(Outcome::Vacuous);
    }
    let (a, b, c) = proper_chain(&cx.space, &cx.sampler, rng)?;
    let b1 = unique_complement(&a, &b, &c)?;
    let clauses = |x: &Flat| -> Result<bool> {
        Ok(b.meet(x)?.as_ref() == Some(&a) && rel(&b, x)? && b.join(x)? == c)
    };
    if !clauses(&b1)? {
        return Ok(Outcome::Violation(
            json!({ "A": a, "B": b, "C": c, "complement": b1, "reason": "complement fails its clauses" }),
        ));
    }
    let complement = cx.space.xi_complement(b.direction(), c.direction())?;
    let n = cx.dim();
    for _ in 0..cx.samples {
        let vectors: Vec<_> = match rng.gen_range(0..3) {
            0 => complement.basis().to_vec(),
            1 => complement
                .basis()
                .iter()
                .map(|z| crate::linalg::add(z, &cx.sampler.vector_in(rng, b.direction())))
                .collect(),
            _ => cx
                .sampler
                .subspace_in(rng, c.direction(), complement.rank())?
                .basis()
                .to_vec(),
        };
        let shift: Vec<_> = vectors
            .iter()
            .map(|v| crate::linalg::add(v, &cx.sampler.vector_in(rng, a.direction())))
            .collect();
        let direction = a.direction().sum(&LinearSubspace::span(shift, n)?)?;
        let alt = a.flat_through(a.base_point(), direction)?;
        if clauses(&alt)? && alt != b1 {
            return Ok(Outcome::Violation(
                json!({ "A": a, "B": b, "C": c, "complement": b1, "alternative": alt }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn uniq(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    uniq_with(cx, rng, perp_g)
}

fn axo_d(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    uniq_with(cx, rng, perp_go)
}

fn pointmeet(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = cx.dim();
    if n < 2 {
        return Ok(Outcome::Vacuous);
    }
    let k1 = rng.gen_range(1..n);
    let k2 = rng.gen_range(1..=n - k1);
    let (a, b) = if rng.gen_bool(0.5) {
        make_perp_pair(&cx.space, &TypedPerpParams::new(0, k1, k2)?, &cx.sampler, rng)?
    } else {
        gen_pair_with_meet_dim(&cx.space, &cx.sampler, k1, k2, 0, rng)?
    };
    if a.meet(&b)?.map(|m| m.dim()) != Some(0) {
        return Ok(Outcome::Vacuous);
    }
    let (g, x) = (perp_g(&a, &b)?, perp_x(&a, &b)?);
    Ok(Outcome::expect(g == x, || json!({ "A": a, "B": b, "perp_g": g, "perp_x": x })))
}

fn perpxsup(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = cx.dim();
    if n < 2 {
        return Ok(Outcome::Vacuous);
    }
    let q = cx.sampler.vector(rng, n);
    let ky = rng.gen_range(1..n);
    let y_dir = cx.sampler.subspace_in(rng, &LinearSubspace::full(n), ky)?;
    let y = Flat::from_parts(&cx.space, q.clone(), y_dir)?;
    let room = cx.space.perp(y.direction());
    let draw = |free: bool, rng: &mut ChaCha8Rng| -> Result<Flat> {
        let k = rng.gen_range(0..=n - ky);
        let within = if free { LinearSubspace::full(n) } else { room.clone() };
        Flat::from_parts(&cx.space, q.clone(), cx.sampler.subspace_in(rng, &within, k)?)
    };
    let x1 = draw(false, rng)?;
    let free = rng.gen_bool(0.2);
    let x2 = draw(free, rng)?;
    if !perp_x(&x1, &y)? || !perp_x(&x2, &y)? {
        return Ok(Outcome::Vacuous);
    }
    let joined = x1.join(&x2)?;
    let holds = perp_x(&y, &joined)?;
    Ok(Outcome::expect(holds, || json!({ "Y": y, "X1": x1, "X2": x2 })))
}

fn refl(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = cx.dim();
    if rng.gen_range(0..8) == 0 {
        let a_dim = rng.gen_range(0..n);
        let a = cx.sampler.flat(rng, &cx.space, a_dim)?;
        let b = a.translate_through(&cx.sampler.vector(rng, n))?;
        if a.meet(&b)?.is_some() {
            return Ok(Outcome::Vacuous);
        }
        return Ok(Outcome::Note(if reflections_commute(&a, &b)? {
            "disjoint_commute"
        } else {
            "disjoint_noncommute"
        }));
    }
    let pair = if rng.gen_bool(0.5) {
        general_meeting_pair(&cx.space, &cx.sampler, rng)?
    } else {
        mixed_meeting_pair(&cx.space, &cx.sampler, rng)?
    };
    let Some((a, b)) = pair else {
        return Ok(Outcome::Vacuous);
    };
    let (commute, go) = (reflections_commute(&a, &b)?, perp_go(&a, &b)?);
    Ok(Outcome::expect(commute == go, || {
        json!({ "A": a, "B": b, "commute": commute, "perp_go": go })
    }))
}

fn iso(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let b_dim = rng.gen_range(0..=cx.dim());
    let b = cx.sampler.flat(rng, &cx.space, b_dim)?;
    let a_dim = rng.gen_range(0..=b.dim());
    let a = cx.sampler.subflat(rng, &b, a_dim)?;
    let go = [perp_go(&a, &b)?, perp_go(&b, &a)?];
    Ok(Outcome::expect(go[0] && go[1], || json!({ "A": a, "B": b, "perp_go": go })))
}

fn ggo(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (a, b) = mixed_pair(&cx.space, &cx.sampler, rng)?;
    let go = perp_go(&a, &b)?;
    let rhs = perp_g(&a, &b)? || a.is_subset_of(&b)? || b.is_subset_of(&a)?;
    Ok(Outcome::expect(go == rhs, || json!({ "A": a, "B": b, "perp_go": go })))
}

fn go_q_indep(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let Some((a, b)) = mixed_meeting_pair(&cx.space, &cx.sampler, rng)? else {
        return Ok(Outcome::Vacuous);
    };
    let m = meet_of(&a, &b)?;
    let expected = perp_go(&a, &b)?;
    let mut points = vec![m.base_point().clone()];
    points.extend((0..3).map(|_| cx.sampler.point_in(rng, &m)));
    for q in &points {
        for side in [Side::First, Side::Second] {
            let got = perp_go_at(&a, &b, q, side)?;
            if got != expected {
                let side = format!("{side:?}");
                return Ok(Outcome::Violation(
                    json!({ "A": a, "B": b, "q": q, "side": side, "perp_go": expected, "at_q": got }),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn sqcup(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    if vacuous_below(cx, 2) {
        return Ok(Outcome::Vacuous);
    }
    let (a, b) = perp_g_pair(cx, rng)?;
    let shared = rng.gen_bool(0.5).then(|| meet_of(&a, &b)).transpose()?;
    let c = g_partner(&a, shared.as_ref().map(|m| m.base_point().as_slice()), &cx.sampler, rng)?;
    if !perp_g(&a, &b)? || !perp_g(&a, &c)? {
        return Ok(Outcome::Vacuous);
    }
    let bc = b.join(&c)?;
    let holds = perp_g(&a, &bc)? || a.is_subset_of(&bc)?;
    Ok(Outcome::expect(holds, || json!({ "A": a, "B": b, "C": c })))
}

fn axo_e(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let a_dim = rng.gen_range(0..=cx.dim());
    let a = cx.sampler.flat(rng, &cx.space, a_dim)?;
    let b = any_go_partner(&a, None, &cx.sampler, rng)?;
    let c = any_go_partner(&a, None, &cx.sampler, rng)?;
    if !perp_go(&a, &b)? || !perp_go(&a, &c)? {
        return Ok(Outcome::Vacuous);
    }
    let holds = perp_go(&a, &b.join(&c)?)?;
    Ok(Outcome::expect(holds, || json!({ "A": a, "B": b, "C": c })))
}

fn cosik2(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    if vacuous_below(cx, 2) {
        return Ok(Outcome::Vacuous);
    }
    let (a, b) = perp_g_pair(cx, rng)?;
    let m = meet_of(&a, &b)?;
    let c = between(&m, &b, m.dim() + 1, b.dim(), &cx.sampler, rng)?;
    let holds = perp_g(&a, &c)?;
    Ok(Outcome::expect(holds, || json!({ "A": a, "B": b, "C": c })))
}

fn axo_f(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let a_dim = rng.gen_range(0..=cx.dim());
    let a = cx.sampler.flat(rng, &cx.space, a_dim)?;
    let b = any_go_partner(&a, None, &cx.sampler, rng)?;
    let m = meet_of(&a, &b)?;
    let c = between(&m, &b, m.dim(), b.dim(), &cx.sampler, rng)?;
    let holds = perp_go(&a, &c)?;
    Ok(Outcome::expect(holds, || json!({ "A": a, "B": b, "C": c })))
}

fn cosik(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    if vacuous_below(cx, 2) {
        return Ok(Outcome::Vacuous);
    }
    let (a, b) = perp_g_pair(cx, rng)?;
    let m = meet_of(&a, &b)?;
    let c = between(&m, &a, m.dim(), a.dim() - 1, &cx.sampler, rng)?;
    let holds = perp_g(&a, &b.join(&c)?)?;
    Ok(Outcome::expect(holds, || json!({ "A": a, "B": b, "C": c })))
}

fn axo_g(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let a_dim = rng.gen_range(0..=cx.dim());
    let a = cx.sampler.flat(rng, &cx.space, a_dim)?;
    let b = any_go_partner(&a, None, &cx.sampler, rng)?;
    let m = meet_of(&a, &b)?;
    let c = between(&m, &a, m.dim(), a.dim(), &cx.sampler, rng)?;
    let holds = perp_go(&a, &b.join(&c)?)?;
    Ok(Outcome::expect(holds, || json!({ "A": a, "B": b, "C": c })))
}

fn meetprop(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    if vacuous_below(cx, 2) {
        return Ok(Outcome::Vacuous);
    }
    let a = proper_flat(&cx.space, &cx.sampler, rng)?;
    let q = cx.sampler.point_in(rng, &a);
    let b = g_partner(&a, Some(&q), &cx.sampler, rng)?;
    let c = g_partner(&a, rng.gen_bool(0.8).then_some(q.as_slice()), &cx.sampler, rng)?;
    let Some(bc) = b.meet(&c)? else {
        return Ok(Outcome::Vacuous);
    };
    if a.meet(&bc)?.is_none() {
        return Ok(Outcome::Vacuous);
    }
    let holds = perp_g(&a, &bc)? || bc.is_subset_of(&a)?;
    Ok(Outcome::expect(holds, || json!({ "A": a, "B": b, "C": c })))
}

fn axo_h(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let a_dim = rng.gen_range(0..=cx.dim());
    let a = cx.sampler.flat(rng, &cx.space, a_dim)?;
    let q = cx.sampler.point_in(rng, &a);
    let b = any_go_partner(&a, Some(&q), &cx.sampler, rng)?;
    let c = any_go_partner(&a, rng.gen_bool(0.8).then_some(q.as_slice()), &cx.sampler, rng)?;
    let Some(bc) = b.meet(&c)? else {
        return Ok(Outcome::Vacuous);
    };
    if a.meet(&bc)?.is_none() {
        return Ok(Outcome::Vacuous);
    }
    let holds = perp_go(&a, &bc)?;
    Ok(Outcome::expect(holds, || json!({ "A": a, "B": b, "C": c })))
}

fn nontriv(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = cx.dim();
    let k1 = rng.gen_range(1..=n);
    let k2 = rng.gen_range(1..=n);
    let m = rng.gen_range(0..k1.min(k2));
    let params = TypedPerpParams::new(m, k1, k2)?;
    let result = make_perp_pair(&cx.space, &params, &cx.sampler, rng);
    let report = |detail: String| json!({ "m": m, "k1": k1, "k2": k2, "result": detail });
    Ok(match (params.satisfiable_in(n), result) {
        (true, Ok((a, b))) => {
            let joined = a.join(&b)?.dim();
            let ok = perp_m(&a, &b, &params)? && joined == k1 + k2 - m && joined <= n;
            Outcome::expect(ok, || json!({ "m": m, "k1": k1, "k2": k2, "X1": a, "X2": b }))
        }
        (false, Err(Error::Unsatisfiable { .. })) => Outcome::Pass,
        (_, Ok(_)) => Outcome::Violation(report("pair returned for unsatisfiable parameters".into())),
        (_, Err(e)) => Outcome::Violation(report(e.to_string())),
    })
}

/// Parameters with `k1 <= k2`, fixed by the context or drawn per trial.
fn ordered_params(cx: &TrialContext, rng: &mut ChaCha8Rng, need_k2: usize) -> Option<TypedPerpParams> {
    match cx.params {
        Some(p) if p.k1 <= p.k2 && p.k2 >= need_k2 && p.satisfiable_in(cx.dim()) => Some(p),
        Some(_) => None,
        None => {
            for _ in 0..cx.sampler.retries {
                let p = random_params(cx.dim(), cx.dim(), true, rng)?;
                if p.k2 >= need_k2 {
                    return Some(p);
                }
            }
            None
        }
    }
}

fn lem1_fwd(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let Some(p) = ordered_params(cx, rng, 1) else {
        return Ok(Outcome::Vacuous);
    };
    let oracle = GroundTruthOracle { params: p };
    let (y1, x2) = make_perp_pair(&cx.space, &TypedPerpParams::new(0, p.k1 - p.m, p.k2)?, &cx.sampler, rng)?;
    let q = meet_of(&y1, &x2)?.base_point().clone();
    for _ in 0..cx.samples {
        let x1 = sample_lemma1_candidate(&y1, &x2, &q, p.m, &cx.sampler, rng)?;
        if !oracle.query(&x1, &x2)? {
            return Ok(Outcome::Violation(json!({ "params": p, "Y1": y1, "X2": x2, "X1": x1 })));
        }
    }
    Ok(Outcome::Pass)
}

fn lem1_bwd(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let Some(p) = ordered_params(cx, rng, 1) else {
        return Ok(Outcome::Vacuous);
    };
    let oracle = GroundTruthOracle { params: p };
    let (y1, x2) = gen_pair_with_meet_dim(&cx.space, &cx.sampler, p.k1 - p.m, p.k2, 0, rng)?;
    if perp_x(&y1, &x2)? {
        return Ok(Outcome::Vacuous);
    }
    let x1 = lemma1_witness(&y1, &x2, p.m)?;
    let answer = oracle.query(&x1, &x2)?;
    Ok(Outcome::expect(!answer, || json!({ "params": p, "Y1": y1, "X2": x2, "X1": x1 })))
}

fn lem2(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let Some(p) = ordered_params(cx, rng, 2) else {
        return Ok(Outcome::Vacuous);
    };
    let (k1p, k2) = (p.k1 - p.m, p.k2);
    if rng.gen_bool(0.5) {
        let (l1, l2) = line_pair(&cx.space, &cx.sampler, true, rng)?;
        let canonical = lemma2_witness(&l1, &l2, k1p, k2)?;
        let random = lemma2_witness_random(&l1, &l2, k1p, k2, &cx.sampler, rng)?;
        for (x1, x2) in [canonical, random] {
            let ok = l1.is_subset_of(&x1)?
                && l2.is_subset_of(&x2)?
                && perp_x(&x1, &x2)?
                && (x1.dim(), x2.dim()) == (k1p, k2);
            if !ok {
                return Ok(Outcome::Violation(json!({ "k1": k1p, "k2": k2, "L1": l1, "L2": l2, "X1": x1, "X2": x2 })));
            }
        }
        return Ok(Outcome::Pass);
    }
    let (l1, l2) = line_pair(&cx.space, &cx.sampler, false, rng)?;
    if ground_truth_line_perp(&l1, &l2)? {
        return Ok(Outcome::Vacuous);
    }
    if !matches!(lemma2_witness(&l1, &l2, k1p, k2), Err(Error::Precondition(_))) {
        return Ok(Outcome::Violation(
            json!({ "k1": k1p, "k2": k2, "L1": l1, "L2": l2, "reason": "witness built for non-orthogonal lines" }),
        ));
    }
    for _ in 0..cx.samples {
        let x1 = cx.sampler.superflat(rng, &l1, k1p)?;
        let x2 = cx.sampler.superflat(rng, &l2, k2)?;
        if perp_x(&x1, &x2)? {
            return Ok(Outcome::Violation(json!({ "k1": k1p, "k2": k2, "L1": l1, "L2": l2, "X1": x1, "X2": x2 })));
        }
    }
    Ok(Outcome::Pass)
}

fn recon(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let Some(p) = ordered_params(cx, rng, 1) else {
        return Ok(Outcome::Vacuous);
    };
    let oracle = GroundTruthOracle { params: p };
    let (l1, l2) = line_pair(&cx.space, &cx.sampler, rng.gen_bool(0.5), rng)?;
    let verdict = reconstruct_line_perp(&l1, &l2, &oracle, &ReconstructionMode::Witness, rng)?;
    let truth = ground_truth_line_perp(&l1, &l2)?;
    Ok(Outcome::expect(verdict == truth, || {
        json!({ "params": p, "L1": l1, "L2": l2, "verdict": verdict, "truth": truth })
    }))
}

fn mode_consist(cx: &TrialContext, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let Some(p) = ordered_params(cx, rng, 1) else {
        return Ok(Outcome::Vacuous);
    };
    let oracle = GroundTruthOracle { params: p };
    let sampled = ReconstructionMode::sampled(cx.samples, cx.sampler)?;
    let (l1, l2) = line_pair(&cx.space, &cx.sampler, rng.gen_bool(0.5), rng)?;
    let witness = reconstruct_line_perp(&l1, &l2, &oracle, &ReconstructionMode::Witness, rng)?;
    if !witness {
        return Ok(Outcome::Vacuous);
    }
    let by_samples = reconstruct_line_perp(&l1, &l2, &oracle, &sampled, rng)?;
    if !by_samples {
        return Ok(Outcome::Violation(json!({ "params": p, "L1": l1, "L2": l2 })));
    }
    // The same one-sided relation at the ⊥⁰ stage, on an orthogonal instance.
    let (y1, x2) = make_perp_pair(&cx.space, &TypedPerpParams::new(0, p.k1 - p.m, p.k2)?, &cx.sampler, rng)?;
    let exact = decide_perp0(&y1, &x2, &oracle, &ReconstructionMode::Witness, rng)?;
    let approx = decide_perp0(&y1, &x2, &oracle, &sampled, rng)?;
    Ok(Outcome::expect(!exact || approx, || json!({ "params": p, "Y1": y1, "X2": x2 })))
}
