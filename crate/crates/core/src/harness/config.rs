use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, QuadraticSpace, Rational};
use crate::sample::{Sampler, DEFAULT_RETRIES};

/// Where the quadratic form of a run comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormSource {
    Identity,
    Diagonal(Vec<Rational>),
    Matrix(Matrix),
}

impl FormSource {
    /// `diag(1, 2, ..., n)`
    pub fn graded(dim: usize) -> Self {
        FormSource::Diagonal((1..=dim as i64).map(Rational::from_integer).collect())
    }

    /// 2 on the diagonal, 1 on the first off-diagonals.
    pub fn tridiagonal(dim: usize) -> Self {
        FormSource::Matrix(
            QuadraticSpace::tridiagonal(dim)
                .expect("tridiagonal form is positive definite")
                .form()
                .clone(),
        )
    }

    /// Identity, graded diagonal and tridiagonal, in that order.
    pub fn defaults(dim: usize) -> Vec<FormSource> {
        vec![FormSource::Identity, FormSource::graded(dim), FormSource::tridiagonal(dim)]
    }

    pub fn build(&self, dim: usize) -> Result<QuadraticSpace> {
        match self {
            FormSource::Identity => QuadraticSpace::euclidean(dim),
            FormSource::Diagonal(weights) => {
                if weights.len() != dim {
                    return Err(Error::Input(format!(
                        "diagonal form has {} entries for dimension {dim}",
                        weights.len()
                    )));
                }
                QuadraticSpace::diagonal(weights)
            }
            FormSource::Matrix(m) => {
                if m.ncols() != dim {
                    return Err(Error::Input(format!(
                        "form matrix has size {} for dimension {dim}",
                        m.ncols()
                    )));
                }
                QuadraticSpace::new(m.clone())
            }
        }
    }

    /// Short human-readable name used in reports.
    pub fn label(&self) -> String {
        let join = |xs: &[Rational]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        match self {
            FormSource::Identity => "identity".into(),
            FormSource::Diagonal(w) => format!("diag({})", join(w)),
            FormSource::Matrix(m) => {
                let rows: Vec<String> = m.rows().iter().map(|r| format!("[{}]", join(r))).collect();
                format!("matrix[{}]", rows.join(","))
            }
        }
    }
}

/// Everything that determines a generated instance stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub dim: usize,
    pub form: FormSource,
    pub numerator_bound: i64,
    pub denominator_bound: i64,
    pub seed: u64,
    pub retries: usize,
}

impl GenConfig {
    pub fn new(dim: usize, form: FormSource, seed: u64) -> Self {
        let s = Sampler::default();
        GenConfig {
            dim,
            form,
            numerator_bound: s.numerator_bound,
            denominator_bound: s.denominator_bound,
            seed,
            retries: DEFAULT_RETRIES,
        }
    }

    /// Validates bounds and the form, returning the space and sampler.
    pub fn materialize(&self) -> Result<(Arc<QuadraticSpace>, Sampler)> {
        let sampler = Sampler::new(self.numerator_bound, self.denominator_bound, self.retries)?;
        let space = self.form.build(self.dim)?;
        Ok((Arc::new(space), sampler))
    }
}
