//! Null and alternative distributions on the Pareto support `(1, inf)`.
//!
//! Alternatives other than the Pareto are right-shifted by one unit so that
//! they share the null's support. Families with a closed-form quantile are
//! sampled by inverse transform; the gamma, log-normal and half-normal
//! families use standard generators followed by the shift.

use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;
use statrs::function::gamma::gamma_lr;

use crate::error::{Error, Result};
use crate::rng::RandomStream;

/// Smallest double strictly above one. Variates that round to `1.0` are
/// nudged here so every sample stays inside the open support.
const ONE_PLUS: f64 = 1.0 + f64::EPSILON;

#[inline]
fn in_support(x: f64) -> f64 {
    if x > 1.0 {
        x
    } else {
        ONE_PLUS
    }
}

/// Observations on the Pareto support, kept in arrival order together with
/// an ascending copy.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    sorted: Vec<f64>,
}

impl Sample {
    /// Validates that the sample is non-empty and every value is finite and
    /// strictly greater than one.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Argument("sample must contain at least one value".into()));
        }
        if let Some((i, &x)) = values
            .iter()
            .enumerate()
            .find(|(_, x)| !(x.is_finite() && **x > 1.0))
        {
            return Err(Error::Domain(format!(
                "observation {} has value {x}; the Pareto support requires finite x > 1",
                i + 1
            )));
        }
        Ok(Self::from_support(values))
    }

    /// Divides raw observations by `divisor` before validating them.
    pub fn scaled(raw: &[f64], divisor: f64) -> Result<Self> {
        if !(divisor.is_finite() && divisor > 0.0) {
            return Err(Error::Domain(format!("scale divisor must be positive, got {divisor}")));
        }
        Self::new(raw.iter().map(|x| x / divisor).collect())
    }

    pub(crate) fn from_support(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|&x| x > 1.0));
        let mut sorted = values.clone();
        // stable, so tied values keep their original relative order
        sorted.sort_by(f64::total_cmp);
        Self { values, sorted }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Order statistics `X_(1) <= ... <= X_(n)`.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.values.iter().map(|&x| f(x)).collect())
    }
}

fn check_shape(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("Pareto shape must be positive, got {beta}")))
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Argument("sample size must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `1 - x^(-beta)` for `x > 1`, zero otherwise.
pub fn pareto_cdf(x: f64, beta: f64) -> Result<f64> {
    check_shape(beta)?;
    if x <= 1.0 {
        return Ok(0.0);
    }
    Ok(-(-beta * x.ln()).exp_m1())
}

/// Inverse of [`pareto_cdf`]: `(1 - u)^(-1/beta)`.
pub fn pareto_quantile(u: f64, beta: f64) -> f64 {
    in_support((1.0 - u).powf(-1.0 / beta))
}

pub fn pareto_sample(beta: f64, n: usize, rng: &mut RandomStream) -> Result<Sample> {
    check_shape(beta)?;
    check_count(n)?;
    let values = (0..n).map(|_| pareto_quantile(rng.uniform(), beta)).collect();
    Ok(Sample::from_support(values))
}

/// Alternative families. Every family except `Pareto` is shifted right by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AltFamily {
    Pareto,
    Gamma,
    Weibull,
    LogNormal,
    HalfNormal,
    LinearFailureRate,
    BetaExponential,
    TiltedPareto,
    Dhillon,
}

impl AltFamily {
    pub const ALL: [AltFamily; 9] = [
        AltFamily::Pareto,
        AltFamily::Gamma,
        AltFamily::Weibull,
        AltFamily::LogNormal,
        AltFamily::HalfNormal,
        AltFamily::LinearFailureRate,
        AltFamily::BetaExponential,
        AltFamily::TiltedPareto,
        AltFamily::Dhillon,
    ];

    /// Short notation used in table row labels.
    pub fn symbol(self) -> &'static str {
        match self {
            AltFamily::Pareto => "P",
            AltFamily::Gamma => "Γ",
            AltFamily::Weibull => "W",
            AltFamily::LogNormal => "LN",
            AltFamily::HalfNormal => "HN",
            AltFamily::LinearFailureRate => "LFR",
            AltFamily::BetaExponential => "BE",
            AltFamily::TiltedPareto => "TP",
            AltFamily::Dhillon => "D",
        }
    }

    /// Lowercase name accepted on the command line.
    pub fn name(self) -> &'static str {
        match self {
            AltFamily::Pareto => "pareto",
            AltFamily::Gamma => "gamma",
            AltFamily::Weibull => "weibull",
            AltFamily::LogNormal => "lognormal",
            AltFamily::HalfNormal => "halfnormal",
            AltFamily::LinearFailureRate => "lfr",
            AltFamily::BetaExponential => "betaexp",
            AltFamily::TiltedPareto => "tiltedpareto",
            AltFamily::Dhillon => "dhillon",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let key = match lower.as_str() {
            "p" => "pareto",
            "gam" | "g" => "gamma",
            "w" => "weibull",
            "ln" | "log-normal" => "lognormal",
            "hn" | "half-normal" => "halfnormal",
            "linearfailurerate" => "lfr",
            "be" | "betaexponential" => "betaexp",
            "tp" => "tiltedpareto",
            "d" => "dhillon",
            other => other,
        };
        Self::ALL.into_iter().find(|f| f.name() == key)
    }
}

/// A fully specified alternative: family, shape parameter and shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlternativeSpec {
    pub family: AltFamily,
    pub theta: f64,
    pub shift: f64,
}

impl AlternativeSpec {
    /// Builds a spec with the conventional shift (0 for Pareto, 1 otherwise).
    /// The Dhillon family also admits `theta = 0`, where it reduces to `P(1)`.
    pub fn new(family: AltFamily, theta: f64) -> Result<Self> {
        let ok = match family {
            AltFamily::Dhillon => theta.is_finite() && theta >= 0.0,
            _ => theta.is_finite() && theta > 0.0,
        };
        if !ok {
            return Err(Error::Domain(format!(
                "{} parameter must be positive, got {theta}",
                family.name()
            )));
        }
        let shift = if family == AltFamily::Pareto { 0.0 } else { 1.0 };
        Ok(Self { family, theta, shift })
    }

    pub fn pareto(beta: f64) -> Result<Self> {
        Self::new(AltFamily::Pareto, beta)
    }

    pub fn is_null(&self) -> bool {
        self.family == AltFamily::Pareto
    }

    /// Parses `family:theta`, e.g. `gamma:1.2` or `TP:3`.
    pub fn parse(text: &str) -> Result<Self> {
        let (name, value) = text
            .split_once(':')
            .ok_or_else(|| Error::Argument(format!("expected family:theta, got `{text}`")))?;
        let family = AltFamily::parse(name)
            .ok_or_else(|| Error::Argument(format!("unknown alternative family `{name}`")))?;
        let theta: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Argument(format!("bad parameter `{value}` in `{text}`")))?;
        Self::new(family, theta)
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.family.symbol(), self.theta)
    }

    /// Closed-form quantile of the shifted law, where one exists.
    pub fn quantile(&self, u: f64) -> Option<f64> {
        let t = self.theta;
        let y = match self.family {
            AltFamily::Pareto => return Some(pareto_quantile(u, t)),
            AltFamily::Weibull => (-(-u).ln_1p()).powf(1.0 / t),
            AltFamily::LinearFailureRate => {
                // solve y + t y^2 / 2 = -log(1 - u)
                let e = -(-u).ln_1p();
                if t == 0.0 {
                    e
                } else {
                    2.0 * e / (1.0 + (1.0 + 2.0 * t * e).sqrt())
                }
            }
            AltFamily::BetaExponential => -(-u.powf(1.0 / t)).ln_1p(),
            AltFamily::TiltedPareto => return Some(in_support((1.0 + t) / (1.0 - u) - t)),
            AltFamily::Dhillon => {
                let e = -(-u).ln_1p();
                return Some(in_support(e.powf(1.0 / (t + 1.0)).exp()));
            }
            AltFamily::Gamma | AltFamily::LogNormal | AltFamily::HalfNormal => return None,
        };
        Some(in_support(self.shift + y))
    }

    /// Analytic mean, where finite.
    pub fn mean(&self) -> Option<f64> {
        let t = self.theta;
        let m = match self.family {
            AltFamily::Pareto => return (t > 1.0).then(|| t / (t - 1.0)),
            AltFamily::Gamma => t,
            AltFamily::Weibull => statrs::function::gamma::gamma(1.0 + 1.0 / t),
            AltFamily::LogNormal => (t * t / 2.0).exp(),
            AltFamily::HalfNormal => t * (2.0 / std::f64::consts::PI).sqrt(),
            AltFamily::TiltedPareto | AltFamily::Dhillon => return None,
            AltFamily::LinearFailureRate | AltFamily::BetaExponential => return None,
        };
        Some(self.shift + m)
    }
}

impl fmt::Display for AlternativeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Exact CDF of an alternative. Points below the support map to zero.
pub fn alt_cdf(spec: &AlternativeSpec, x: f64) -> f64 {
    let t = spec.theta;
    let unshifted = matches!(spec.family, AltFamily::Pareto | AltFamily::TiltedPareto | AltFamily::Dhillon);
    if unshifted && x <= 1.0 {
        return 0.0;
    }
    let y = x - spec.shift;
    match spec.family {
        AltFamily::Pareto => -(-t * x.ln()).exp_m1(),
        AltFamily::TiltedPareto => 1.0 - (1.0 + t) / (x + t),
        AltFamily::Dhillon => -(-x.ln().powf(t + 1.0)).exp_m1(),
        _ if y <= 0.0 => 0.0,
        AltFamily::Gamma => gamma_lr(t, y),
        AltFamily::Weibull => -(-y.powf(t)).exp_m1(),
        AltFamily::LogNormal => 0.5 * (1.0 + erf(y.ln() / (t * std::f64::consts::SQRT_2))),
        AltFamily::HalfNormal => erf(y / (t * std::f64::consts::SQRT_2)),
        AltFamily::LinearFailureRate => -(-y - t * y * y / 2.0).exp_m1(),
        AltFamily::BetaExponential => (-(-y).exp_m1()).powf(t),
    }
}

pub fn alt_sample(spec: &AlternativeSpec, n: usize, rng: &mut RandomStream) -> Result<Sample> {
    check_count(n)?;
    let values = (0..n).map(|_| draw_alt(spec, rng)).collect();
    Ok(Sample::from_support(values))
}

fn draw_alt(spec: &AlternativeSpec, rng: &mut RandomStream) -> f64 {
    let t = spec.theta;
    let y = match spec.family {
        AltFamily::Gamma => {
            let g = Gamma::new(t, 1.0).expect("validated gamma shape");
            g.sample(rng)
        }
        AltFamily::LogNormal => {
            let z: f64 = rng.sample(StandardNormal);
            (t * z).exp()
        }
        AltFamily::HalfNormal => {
            let z: f64 = rng.sample(StandardNormal);
            t * z.abs()
        }
        _ => {
            let u = rng.uniform();
            return spec.quantile(u).expect("closed-form family");
        }
    };
    in_support(spec.shift + y)
}

/// Contaminating law in a mixture alternative, parameterised by its mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Contaminant {
    /// `1 + Exp(rate 1 / (mean - 1))`
    ShiftedExponential,
    /// `1 + |N(0, s^2)|` with `s = (mean - 1) sqrt(pi / 2)`
    ShiftedHalfNormal,
    /// `1 + LN(mu, 1)` with `mu = log(mean - 1) - 1/2`
    ShiftedLogNormal,
}

impl Contaminant {
    pub fn name(self) -> &'static str {
        match self {
            Contaminant::ShiftedExponential => "exponential",
            Contaminant::ShiftedHalfNormal => "halfnormal",
            Contaminant::ShiftedLogNormal => "lognormal",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "exponential" | "exp" => Some(Contaminant::ShiftedExponential),
            "halfnormal" | "hn" | "half-normal" => Some(Contaminant::ShiftedHalfNormal),
            "lognormal" | "ln" | "log-normal" => Some(Contaminant::ShiftedLogNormal),
            _ => None,
        }
    }
}

/// With probability `p` an observation comes from the contaminant, otherwise
/// from a Pareto whose mean equals the contaminant's.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub p: f64,
    pub contaminant: Contaminant,
    pub contaminant_mean: f64,
    pub pareto_beta: f64,
}

impl MixtureSpec {
    pub const DEFAULT_MEAN: f64 = 3.0;

    pub fn new(p: f64, contaminant: Contaminant, contaminant_mean: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("mixing proportion must lie in [0, 1], got {p}")));
        }
        if !(contaminant_mean.is_finite() && contaminant_mean > 1.0) {
            return Err(Error::Domain(format!(
                "contaminant mean must exceed 1, got {contaminant_mean}"
            )));
        }
        Ok(Self {
            p,
            contaminant,
            contaminant_mean,
            pareto_beta: contaminant_mean / (contaminant_mean - 1.0),
        })
    }

    pub fn with_default_mean(p: f64, contaminant: Contaminant) -> Result<Self> {
        Self::new(p, contaminant, Self::DEFAULT_MEAN)
    }

    /// Parses `contaminant:p` or `contaminant:p:mean`, e.g. `lognormal:0.9`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let bad = || Error::Argument(format!("expected contaminant:p[:mean], got `{text}`"));
        if !(2..=3).contains(&parts.len()) {
            return Err(bad());
        }
        let contaminant = Contaminant::parse(parts[0])
            .ok_or_else(|| Error::Argument(format!("unknown contaminant `{}`", parts[0])))?;
        let p: f64 = parts[1].parse().map_err(|_| bad())?;
        let mean = match parts.get(2) {
            Some(m) => m.parse().map_err(|_| bad())?,
            None => Self::DEFAULT_MEAN,
        };
        Self::new(p, contaminant, mean)
    }

    pub fn label(&self) -> String {
        format!("{}-mix(p={})", self.contaminant.name(), self.p)
    }

    /// Analytic mean of the contaminant after the shift.
    pub fn contaminant_analytic_mean(&self) -> f64 {
        let excess = self.contaminant_mean - 1.0;
        1.0 + match self.contaminant {
            Contaminant::ShiftedExponential => excess,
            Contaminant::ShiftedHalfNormal => {
                self.half_normal_scale() * (2.0 / std::f64::consts::PI).sqrt()
            }
            Contaminant::ShiftedLogNormal => (self.log_normal_mu() + 0.5).exp(),
        }
    }

    pub fn pareto_analytic_mean(&self) -> f64 {
        self.pareto_beta / (self.pareto_beta - 1.0)
    }

    fn half_normal_scale(&self) -> f64 {
        (self.contaminant_mean - 1.0) * (std::f64::consts::PI / 2.0).sqrt()
    }

    fn log_normal_mu(&self) -> f64 {
        (self.contaminant_mean - 1.0).ln() - 0.5
    }

    fn draw_contaminant(&self, rng: &mut RandomStream) -> f64 {
        let y = match self.contaminant {
            Contaminant::ShiftedExponential => {
                -(self.contaminant_mean - 1.0) * (-rng.uniform()).ln_1p()
            }
            Contaminant::ShiftedHalfNormal => {
                let z: f64 = rng.sample(StandardNormal);
                self.half_normal_scale() * z.abs()
            }
            Contaminant::ShiftedLogNormal => {
                let z: f64 = rng.sample(StandardNormal);
                (self.log_normal_mu() + z).exp()
            }
        };
        in_support(1.0 + y)
    }
}

pub fn mixture_sample(spec: &MixtureSpec, n: usize, rng: &mut RandomStream) -> Result<Sample> {
    check_count(n)?;
    let spec = MixtureSpec::new(spec.p, spec.contaminant, spec.contaminant_mean)?;
    let values = (0..n)
        .map(|_| {
            if rng.uniform() < spec.p {
                spec.draw_contaminant(rng)
            } else {
                pareto_quantile(rng.uniform(), spec.pareto_beta)
            }
        })
        .collect();
    Ok(Sample::from_support(values))
}

/// Anything a power study can sample from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Scenario {
    Alternative(AlternativeSpec),
    Mixture(MixtureSpec),
}

impl Scenario {
    pub fn sample(&self, n: usize, rng: &mut RandomStream) -> Result<Sample> {
        match self {
            Scenario::Alternative(spec) => alt_sample(spec, n, rng),
            Scenario::Mixture(spec) => mixture_sample(spec, n, rng),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Scenario::Alternative(spec) => spec.label(),
            Scenario::Mixture(spec) => spec.label(),
        }
    }

    /// True when the scenario lies in the null hypothesis.
    pub fn is_null(&self) -> bool {
        match self {
            Scenario::Alternative(spec) => spec.is_null(),
            Scenario::Mixture(spec) => spec.p == 0.0,
        }
    }
}

impl From<AlternativeSpec> for Scenario {
    fn from(spec: AlternativeSpec) -> Self {
        Scenario::Alternative(spec)
    }
}

impl From<MixtureSpec> for Scenario {
    fn from(spec: MixtureSpec) -> Self {
        Scenario::Mixture(spec)
    }
}
