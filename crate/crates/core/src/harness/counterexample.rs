//! Two fixed configurations in Q³ showing that `⊥g` is not transitive under
//! inclusion in either direction.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::affine::{AffineSubspace, SubspaceRecord};
use crate::error::{Error, Result};
use crate::linalg::{int_vector, QuadraticSpace};
use crate::orthogonality::perp_g;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleCheck {
    pub claim: String,
    pub expected: bool,
    pub actual: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledInstance {
    pub label: String,
    pub flats: BTreeMap<String, SubspaceRecord>,
    pub checks: Vec<CounterexampleCheck>,
}

impl LabeledInstance {
    /// Rebuilds the named flats in `space`.
    pub fn reload(&self, space: &Arc<QuadraticSpace>) -> Result<BTreeMap<String, AffineSubspace>> {
        self.flats
            .iter()
            .map(|(k, r)| Ok((k.clone(), AffineSubspace::from_record(space, r)?)))
            .collect()
    }
}

fn through_origin(space: &Arc<QuadraticSpace>, dirs: &[&[i64]]) -> Result<AffineSubspace> {
    AffineSubspace::new(space, int_vector(&[0, 0, 0]), dirs.iter().map(|d| int_vector(d)).collect())
}

fn proper_subset(x: &AffineSubspace, y: &AffineSubspace) -> Result<bool> {
    Ok(x.is_subset_of(y)? && x.dim() < y.dim())
}

fn instance(
    label: &str,
    flats: [(&str, &AffineSubspace); 3],
    checks: Vec<(&str, bool, bool)>,
) -> Result<LabeledInstance> {
    let checks: Vec<CounterexampleCheck> = checks
        .into_iter()
        .map(|(claim, expected, actual)| CounterexampleCheck {
            claim: claim.into(),
            expected,
            actual,
        })
        .collect();
    if let Some(bad) = checks.iter().find(|c| c.expected != c.actual) {
        return Err(Error::Internal(format!("{label}: `{}` evaluated to {}", bad.claim, bad.actual)));
    }
    Ok(LabeledInstance {
        label: label.into(),
        flats: flats.iter().map(|(k, x)| (k.to_string(), x.to_record())).collect(),
        checks,
    })
}

/// Builds and verifies both configurations with the Euclidean form.
pub fn emit_counterexamples() -> Result<Vec<LabeledInstance>> {
    let s = Arc::new(QuadraticSpace::euclidean(3)?);

    let a = through_origin(&s, &[&[0, 1, 0]])?;
    let b = through_origin(&s, &[&[1, 0, 0]])?;
    let c = through_origin(&s, &[&[1, 0, 0], &[0, 1, 1]])?;
    let first = instance(
        "lines A ⊥g B inside a plane C with A not ⊥g C",
        [("A", &a), ("B", &b), ("C", &c)],
        vec![
            ("A ⊥g B", true, perp_g(&a, &b)?),
            ("B ⊊ C", true, proper_subset(&b, &c)?),
            ("dim C = dim B + 1", true, c.dim() == b.dim() + 1),
            ("A ⊥g C", false, perp_g(&a, &c)?),
        ],
    )?;

    let a = through_origin(&s, &[&[1, 0, 0], &[0, 1, 0]])?;
    let b = through_origin(&s, &[&[1, 0, 0], &[0, 0, 1]])?;
    let c = through_origin(&s, &[&[1, 0, 1]])?;
    let second = instance(
        "planes A ⊥g B and a line C of B meeting A with A not ⊥g C",
        [("A", &a), ("B", &b), ("C", &c)],
        vec![
            ("A ⊥g B", true, perp_g(&a, &b)?),
            ("C ⊊ B", true, proper_subset(&c, &b)?),
            ("A ∩ C ≠ ∅", true, a.meet(&c)?.is_some()),
            ("dim C = dim B - 1", true, c.dim() + 1 == b.dim()),
            ("A ⊥g C", false, perp_g(&a, &c)?),
        ],
    )?;
    Ok(vec![first, second])
}
