//! Seeded property checking over random instances.
//!
//! Every trial draws from its own generator seeded by `(seed, property id,
//! trial index)`, so a report depends only on the configuration and never on
//! the order or parallelism of evaluation.

mod config;
mod counterexample;
pub mod generators;
mod properties;
mod recon;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::QuadraticSpace;
use crate::orthogonality::TypedPerpParams;
use crate::sample::Sampler;

pub use config::{FormSource, GenConfig};
pub use counterexample::{emit_counterexamples, CounterexampleCheck, LabeledInstance};
pub use generators::{gen_pair_with_meet_dim, gen_subspace};
pub use properties::{property_ids, AXIOM_PROPERTIES};
pub use recon::{run_reconstruction, ReconstructionSummary};

/// Number of sampled candidates per instance when not overridden.
pub const DEFAULT_SAMPLES: usize = 20;

/// Result of one trial.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    /// The antecedent of the property did not hold for the drawn instance.
    Vacuous,
    /// A pass that is tallied under the given key in the report notes.
    Note(&'static str),
    /// The property failed; the value describes the instance.
    Violation(Value),
}

impl Outcome {
    pub fn expect(holds: bool, instance: impl FnOnce() -> Value) -> Outcome {
        if holds {
            Outcome::Pass
        } else {
            Outcome::Violation(instance())
        }
    }
}

/// What a property sees on each trial.
pub struct TrialContext {
    pub space: Arc<QuadraticSpace>,
    pub sampler: Sampler,
    /// Fixed typed-orthogonality parameters for reconstruction properties;
    /// drawn per trial when absent.
    pub params: Option<TypedPerpParams>,
    /// Sample count for properties that try several candidates.
    pub samples: usize,
}

impl TrialContext {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyOptions {
    pub params: Option<TypedPerpParams>,
    pub samples: usize,
}

impl Default for PropertyOptions {
    fn default() -> Self {
        PropertyOptions {
            params: None,
            samples: DEFAULT_SAMPLES,
        }
    }
}

/// Tally of one property over one configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property_id: String,
    pub form: String,
    pub dim: usize,
    pub trials: usize,
    pub violations: usize,
    /// Trials whose instance missed the antecedent.
    pub vacuous: usize,
    /// The violating instance with the lowest trial index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Value>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, usize>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` of `property_id` under master seed `seed`.
pub fn trial_seed(seed: u64, property_id: &str, index: usize) -> u64 {
    splitmix64(splitmix64(seed ^ fnv1a(property_id)).wrapping_add(index as u64))
}

pub fn trial_rng(seed: u64, property_id: &str, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, property_id, index))
}

/// Runs `trials` trials of a registered property with default options.
pub fn run_property(property_id: &str, cfg: &GenConfig, trials: usize) -> Result<PropertyReport> {
    run_property_with(property_id, cfg, trials, &PropertyOptions::default())
}

pub fn run_property_with(
    property_id: &str,
    cfg: &GenConfig,
    trials: usize,
    opts: &PropertyOptions,
) -> Result<PropertyReport> {
    let f = properties::lookup(property_id)
        .ok_or_else(|| Error::Input(format!("unknown property id {property_id:?}")))?;
    run_custom_property(property_id, cfg, trials, opts, f)
}

/// Runs an arbitrary trial function through the same seeding and tallying
/// as the registered properties.
pub fn run_custom_property<F>(
    property_id: &str,
    cfg: &GenConfig,
    trials: usize,
    opts: &PropertyOptions,
    f: F,
) -> Result<PropertyReport>
where
    F: Fn(&TrialContext, &mut ChaCha8Rng) -> Result<Outcome> + Sync,
{
    if opts.samples == 0 {
        return Err(Error::Input("sample count must be at least 1".into()));
    }
    let (space, sampler) = cfg.materialize()?;
    let cx = TrialContext {
        space,
        sampler,
        params: opts.params,
        samples: opts.samples,
    };
    let start = Instant::now();
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, property_id, i);
            f(&cx, &mut rng).unwrap_or_else(|e| Outcome::Violation(json!({ "error": e.to_string() })))
        })
        .collect();
    let mut report = PropertyReport {
        property_id: property_id.to_string(),
        form: cfg.form.label(),
        dim: cfg.dim,
        trials,
        violations: 0,
        vacuous: 0,
        first_counterexample: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
        notes: BTreeMap::new(),
    };
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Pass => {}
            Outcome::Vacuous => report.vacuous += 1,
            Outcome::Note(key) => *report.notes.entry(key.to_string()).or_default() += 1,
            Outcome::Violation(instance) => {
                report.violations += 1;
                if report.first_counterexample.is_none() {
                    report.first_counterexample = Some(json!({ "trial": i, "instance": instance }));
                }
            }
        }
    }
    Ok(report)
}

/// A batch of properties over several forms in one dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub dim: usize,
    pub forms: Vec<FormSource>,
    pub properties: Vec<String>,
    pub trials: usize,
    pub seed: u64,
    pub numerator_bound: i64,
    pub denominator_bound: i64,
    pub retries: usize,
    pub samples: usize,
}

impl SuiteConfig {
    /// All registered properties over the three default forms.
    pub fn new(dim: usize, trials: usize, seed: u64) -> Self {
        let gen = GenConfig::new(dim, FormSource::Identity, seed);
        SuiteConfig {
            dim,
            forms: FormSource::defaults(dim),
            properties: property_ids().iter().map(|s| s.to_string()).collect(),
            trials,
            seed,
            numerator_bound: gen.numerator_bound,
            denominator_bound: gen.denominator_bound,
            retries: gen.retries,
            samples: DEFAULT_SAMPLES,
        }
    }

    fn gen_config(&self, form: &FormSource) -> GenConfig {
        GenConfig {
            dim: self.dim,
            form: form.clone(),
            numerator_bound: self.numerator_bound,
            denominator_bound: self.denominator_bound,
            seed: self.seed,
            retries: self.retries,
        }
    }
}

/// The reports of a suite run plus the configuration that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub config: Value,
    pub reports: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn violations(&self) -> usize {
        self.reports.iter().map(|r| r.violations).sum()
    }

    /// Sets every `elapsed_ms` to zero so the output depends only on the
    /// configuration.
    pub fn without_timing(mut self) -> Self {
        for r in &mut self.reports {
            r.elapsed_ms = 0;
        }
        self
    }
}

/// Runs every requested property on every form. Reports are ordered by
/// property id, then by the order of `forms`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    for id in &cfg.properties {
        if properties::lookup(id).is_none() {
            return Err(Error::Input(format!("unknown property id {id:?}")));
        }
    }
    if cfg.forms.is_empty() {
        return Err(Error::Input("no forms selected".into()));
    }
    let mut ids = cfg.properties.clone();
    ids.sort();
    ids.dedup();
    let opts = PropertyOptions {
        params: None,
        samples: cfg.samples,
    };
    let mut reports = Vec::new();
    for id in &ids {
        for form in &cfg.forms {
            reports.push(run_property_with(id, &cfg.gen_config(form), cfg.trials, &opts)?);
        }
    }
    let config = json!({
        "dim": cfg.dim,
        "forms": cfg.forms.iter().map(FormSource::label).collect::<Vec<_>>(),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "numerator_bound": cfg.numerator_bound,
        "denominator_bound": cfg.denominator_bound,
        "retries": cfg.retries,
        "samples": cfg.samples,
        "properties": ids,
    });
    Ok(SuiteReport {
        schema: 1,
        config,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_depend_on_all_inputs() {
        let s = trial_seed(1, "P-SYM", 0);
        assert_eq!(s, trial_seed(1, "P-SYM", 0));
        assert_ne!(s, trial_seed(2, "P-SYM", 0));
        assert_ne!(s, trial_seed(1, "P-ISO", 0));
        assert_ne!(s, trial_seed(1, "P-SYM", 1));
    }

    #[test]
    fn unknown_property_is_an_input_error() {
        let cfg = GenConfig::new(3, FormSource::Identity, 0);
        assert!(matches!(run_property("NO-SUCH", &cfg, 1), Err(Error::Input(_))));
        let mut suite = SuiteConfig::new(3, 1, 0);
        suite.properties = vec!["NO-SUCH".into()];
        assert!(matches!(run_suite(&suite), Err(Error::Input(_))));
    }

    #[test]
    fn falsified_predicate_is_caught() {
        let cfg = GenConfig::new(3, FormSource::Identity, 5);
        let report = run_custom_property("NEG-G", &cfg, 50, &PropertyOptions::default(), |cx, rng| {
            let (a, b) = generators::mixed_pair(&cx.space, &cx.sampler, rng)?;
            let negated = !crate::orthogonality::perp_g(&a, &b)?;
            Ok(Outcome::expect(negated == crate::orthogonality::perp_g(&a, &b)?, || {
                json!({ "A": a, "B": b })
            }))
        })
        .unwrap();
        assert_eq!(report.violations, 50);
        let cex = report.first_counterexample.unwrap();
        assert_eq!(cex["trial"], 0);
        assert!(cex["instance"]["A"]["basis"].is_array());
    }

    #[test]
    fn errors_count_as_violations() {
        let cfg = GenConfig::new(2, FormSource::Identity, 0);
        let report = run_custom_property("ERR", &cfg, 3, &PropertyOptions::default(), |_, _| {
            Err(Error::Internal("boom".into()))
        })
        .unwrap();
        assert_eq!(report.violations, 3);
        assert_eq!(report.first_counterexample.unwrap()["instance"]["error"], "internal invariant violated: boom");
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = GenConfig::new(4, FormSource::graded(4), 42);
        let a = run_property("P-SYM", &cfg, 40).unwrap();
        let b = run_property("P-SYM", &cfg, 40).unwrap();
        assert_eq!(PropertyReport { elapsed_ms: 0, ..a }, PropertyReport { elapsed_ms: 0, ..b });
    }
}
