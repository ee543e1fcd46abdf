//! Shape estimation for the Pareto null.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::Sample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Estimator {
    /// Maximum likelihood, `n / sum(log x)`.
    Mle,
    /// Method of moments, `mean / (mean - 1)`.
    Mme,
}

impl Estimator {
    pub const ALL: [Estimator; 2] = [Estimator::Mme, Estimator::Mle];

    pub fn name(self) -> &'static str {
        match self {
            Estimator::Mle => "MLE",
            Estimator::Mme => "MME",
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mle" => Ok(Estimator::Mle),
            "mme" => Ok(Estimator::Mme),
            other => Err(Error::Argument(format!("unknown estimator `{other}` (mle|mme)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeEstimate {
    pub method: Estimator,
    pub beta: f64,
}

pub fn estimate_mle(sample: &Sample) -> Result<ShapeEstimate> {
    let log_sum: f64 = sample.values().iter().map(|x| x.ln()).sum();
    if !(log_sum > 0.0 && log_sum.is_finite()) {
        return Err(Error::Domain(format!(
            "MLE undefined: sum of log observations is {log_sum}"
        )));
    }
    Ok(ShapeEstimate {
        method: Estimator::Mle,
        beta: sample.len() as f64 / log_sum,
    })
}

pub fn estimate_mme(sample: &Sample) -> Result<ShapeEstimate> {
    let mean = sample.mean();
    let beta = mean / (mean - 1.0);
    if !(mean > 1.0 && beta.is_finite() && beta > 1.0) {
        return Err(Error::Domain(format!(
            "MME undefined for sample mean {mean}"
        )));
    }
    Ok(ShapeEstimate {
        method: Estimator::Mme,
        beta,
    })
}

pub fn estimate(method: Estimator, sample: &Sample) -> Result<ShapeEstimate> {
    match method {
        Estimator::Mle => estimate_mle(sample),
        Estimator::Mme => estimate_mme(sample),
    }
}

/// Raises every observation to the power `c`.
pub fn power_transform(sample: &Sample, c: f64) -> Result<Sample> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Domain(format!("power must be positive, got {c}")));
    }
    // exp(c log x) keeps the result on the support when x is close to one
    sample.map(|x| (c * x.ln()).exp().max(1.0 + f64::EPSILON))
}

/// `Y_j = X_j^beta_mle`. Under the null the result is `P(1)`-distributed up to
/// estimation error, and its own MLE is exactly one.
pub fn pivotal_transform(sample: &Sample) -> Result<Sample> {
    let est = estimate_mle(sample)?;
    power_transform(sample, est.beta)
}
