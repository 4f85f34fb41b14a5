//! Batch comparison of the reconstruction pipeline with the reference verdict.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::generators::line_pair;
use super::{trial_rng, GenConfig};
use crate::error::{Error, Result};
use crate::orthogonality::TypedPerpParams;
use crate::reconstruction::{ground_truth_line_perp, reconstruct_line_perp, GroundTruthOracle, ReconstructionMode};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionSummary {
    pub params: TypedPerpParams,
    pub dim: usize,
    pub form: String,
    pub pairs: usize,
    /// Pairs built with ξ-orthogonal directions (the first half).
    pub constructed_orthogonal: usize,
    /// Pairs whose reference verdict is `true`.
    pub truly_orthogonal: usize,
    /// Witness-mode verdicts equal to the reference verdict.
    pub agreements: usize,
    /// Pairs where witness mode said `true` and sampled mode said `false`.
    pub sampled_contradictions: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<Value>,
}

impl ReconstructionSummary {
    pub fn passed(&self) -> bool {
        self.agreements == self.pairs && self.sampled_contradictions == 0
    }
}

struct PairResult {
    truth: bool,
    witness: bool,
    sampled: bool,
    instance: Value,
}

/// Reconstructs line orthogonality for `pairs` line pairs: the first half
/// have ξ-orthogonal directions, the rest are random. Each pair is decided
/// in witness mode and in sampled mode with `samples` candidates.
pub fn run_reconstruction(
    cfg: &GenConfig,
    params: TypedPerpParams,
    pairs: usize,
    samples: usize,
) -> Result<ReconstructionSummary> {
    let (space, sampler) = cfg.materialize()?;
    let params = TypedPerpParams::new(params.m, params.k1, params.k2)?;
    if !params.satisfiable_in(cfg.dim) {
        return Err(Error::Input(format!(
            "k1 + k2 - m = {} exceeds dimension {}",
            params.join_dim(),
            cfg.dim
        )));
    }
    let oracle = GroundTruthOracle { params };
    let sampled = ReconstructionMode::sampled(samples, sampler)?;
    let half = pairs / 2 + pairs % 2;
    let results: Vec<Result<PairResult>> = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, "reconstruct", i);
            let (l1, l2) = line_pair(&space, &sampler, i < half, &mut rng)?;
            let truth = ground_truth_line_perp(&l1, &l2)?;
            let witness = reconstruct_line_perp(&l1, &l2, &oracle, &ReconstructionMode::Witness, &mut rng)?;
            let sampled = reconstruct_line_perp(&l1, &l2, &oracle, &sampled, &mut rng)?;
            Ok(PairResult {
                truth,
                witness,
                sampled,
                instance: json!({ "pair": i, "L1": l1, "L2": l2 }),
            })
        })
        .collect();
    let mut summary = ReconstructionSummary {
        params,
        dim: cfg.dim,
        form: cfg.form.label(),
        pairs,
        constructed_orthogonal: half.min(pairs),
        truly_orthogonal: 0,
        agreements: 0,
        sampled_contradictions: 0,
        first_disagreement: None,
    };
    for r in results {
        let r = r?;
        summary.truly_orthogonal += usize::from(r.truth);
        let agree = r.witness == r.truth;
        summary.agreements += usize::from(agree);
        let contradiction = r.witness && !r.sampled;
        summary.sampled_contradictions += usize::from(contradiction);
        if (!agree || contradiction) && summary.first_disagreement.is_none() {
            let mut inst = r.instance;
            inst["truth"] = json!(r.truth);
            inst["witness"] = json!(r.witness);
            inst["sampled"] = json!(r.sampled);
            summary.first_disagreement = Some(inst);
        }
    }
    Ok(summary)
}
