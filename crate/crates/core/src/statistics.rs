//! Test statistic kernels.
//!
//! Every kernel works on the ascending log-observations `l_(j) = log X_(j)`;
//! powers are evaluated as `X^(-c beta) = exp(-c beta l)`. All statistics
//! reject the Pareto null for large values.
//!
//! Two evaluation conventions exist (see [`evaluate`]):
//!
//! * MLE: the sample is replaced by its pivotal transform `X_j^beta_mle`,
//!   whose own MLE is one, and the statistic is computed with `beta = 1`.
//!   The null distribution is then free of the unknown shape.
//! * MME: the method of moments estimate is plugged in on the raw data.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::Sample;
use crate::error::{Error, Result};
use crate::estimation::{estimate, Estimator};

/// Lower clamp for EDF probabilities entering a logarithm.
pub const DEGENERACY_EPS: f64 = 1e-15;

/// Tuning value behind the `G` column. With the weight integrals written as
/// in [`mellin_g`], `a = 2` reproduces the reference sizes, powers and golf
/// results; other values are available through `TestKind::MellinG`.
pub const DEFAULT_MELLIN_A: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum TestKind {
    Mp1,
    Mp2,
    Ks,
    Cv,
    Ad,
    Za,
    /// Mellin transform statistic with weight `exp(-a t)`.
    MellinG { a: f64 },
    ExpKs,
    ExpCv,
    ExpAd,
    ExpZa,
}

impl TestKind {
    pub const G: TestKind = TestKind::MellinG { a: DEFAULT_MELLIN_A };

    /// Pareto-specific statistics in power-table column order.
    pub const PARETO: [TestKind; 7] = [
        TestKind::Ks,
        TestKind::Cv,
        TestKind::Ad,
        TestKind::Za,
        TestKind::G,
        TestKind::Mp1,
        TestKind::Mp2,
    ];

    /// EDF tests for exponentiality applied to `log X`.
    pub const EXPONENTIAL: [TestKind; 4] =
        [TestKind::ExpKs, TestKind::ExpCv, TestKind::ExpAd, TestKind::ExpZa];

    pub fn all() -> Vec<TestKind> {
        Self::PARETO.iter().chain(Self::EXPONENTIAL.iter()).copied().collect()
    }

    pub fn is_exponential(self) -> bool {
        matches!(
            self,
            TestKind::ExpKs | TestKind::ExpCv | TestKind::ExpAd | TestKind::ExpZa
        )
    }

    /// Exponentiality tests carry their own rate MLE and only exist on the
    /// MLE path.
    pub fn supports(self, estimator: Estimator) -> bool {
        !self.is_exponential() || estimator == Estimator::Mle
    }

    /// Stable identifier used in cache files and table headers.
    pub fn key(self) -> String {
        match self {
            TestKind::Mp1 => "MP1".into(),
            TestKind::Mp2 => "MP2".into(),
            TestKind::Ks => "KS".into(),
            TestKind::Cv => "CV".into(),
            TestKind::Ad => "AD".into(),
            TestKind::Za => "ZA".into(),
            TestKind::MellinG { a } if a == DEFAULT_MELLIN_A => "G".into(),
            TestKind::MellinG { a } => format!("G(a={a})"),
            TestKind::ExpKs => "ExpKS".into(),
            TestKind::ExpCv => "ExpCV".into(),
            TestKind::ExpAd => "ExpAD".into(),
            TestKind::ExpZa => "ExpZA".into(),
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl FromStr for TestKind {
    type Err = Error;

    /// Accepts the keys produced by [`TestKind::key`] case-insensitively, plus
    /// `g:<a>` / `mellin:<a>` for a non-default tuning parameter.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || Error::Argument(format!("unknown test `{s}`"));
        if let Some(rest) = lower
            .strip_prefix("g(a=")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| lower.strip_prefix("g:"))
            .or_else(|| lower.strip_prefix("mellin:"))
        {
            let a: f64 = rest.parse().map_err(|_| bad())?;
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::Domain(format!("Mellin tuning parameter must be positive, got {a}")));
            }
            return Ok(TestKind::MellinG { a });
        }
        Ok(match lower.as_str() {
            "mp1" => TestKind::Mp1,
            "mp2" => TestKind::Mp2,
            "ks" => TestKind::Ks,
            "cv" | "cm" => TestKind::Cv,
            "ad" => TestKind::Ad,
            "za" => TestKind::Za,
            "g" | "mellin" => TestKind::G,
            "expks" => TestKind::ExpKs,
            "expcv" => TestKind::ExpCv,
            "expad" => TestKind::ExpAd,
            "expza" => TestKind::ExpZa,
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatisticValue {
    pub kind: TestKind,
    pub value: f64,
    pub n: usize,
    /// Shape (or, for the exponentiality tests, rate) estimate behind the
    /// value.
    pub beta_used: f64,
    /// Set when an EDF probability had to be clamped away from 0 or 1.
    pub clamped: bool,
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("shape must be positive, got {beta}")))
    }
}

fn sorted_logs(sample: &Sample) -> Vec<f64> {
    sample.sorted().iter().map(|x| x.ln()).collect()
}

/// `v_{j,n} = (n-j+1)^2 - (n-j)^2 = 2(n-j) + 1` for 1-based `j`.
#[inline]
pub fn order_weight(j: usize, n: usize) -> f64 {
    (2 * (n - j) + 1) as f64
}

pub(crate) fn mp1_from_logs(logs: &[f64], beta: f64) -> f64 {
    let n = logs.len();
    let nf = n as f64;
    let mut single = 0.0;
    let mut weighted = 0.0;
    for (i, &l) in logs.iter().enumerate() {
        single += (-1.5 * beta * l).exp();
        weighted += order_weight(i + 1, n) * (-0.5 * beta * l).exp();
    }
    2.0 / (3.0 * nf) * single - weighted / (nf * nf) + 8.0 / 15.0
}

pub(crate) fn mp2_from_logs(logs: &[f64], beta: f64) -> f64 {
    let n = logs.len();
    let nf = n as f64;
    let mut w0 = 0.0;
    let mut w1 = 0.0;
    let mut tail = 0.0;
    for (i, &l) in logs.iter().enumerate() {
        let v = order_weight(i + 1, n);
        let p = (-beta * l).exp();
        let p2 = p * p;
        w0 += v * p;
        w1 += v * p * l;
        tail += (1.0 - p2) / (2.0 * beta) - p2 * l;
    }
    10.0 / 9.0 - w0 / (nf * nf) - beta * w1 / (nf * nf) - beta * tail / nf
}

/// The weight integrals `I^(m)_a(x) = int_0^inf (t-1)^m x^(-t) e^(-a t) dt`
/// for `m = 0, 1, 2`, as functions of `log x`.
#[inline]
pub fn mellin_weights(log_x: f64, a: f64) -> [f64; 3] {
    let d = a + log_x;
    let i0 = 1.0 / d;
    let i1 = (1.0 - a - log_x) * i0 * i0;
    let i2 = (2.0 - 2.0 * a + a * a + 2.0 * (a - 1.0) * log_x + log_x * log_x) * i0 * i0 * i0;
    [i0, i1, i2]
}

pub(crate) fn mellin_from_logs(logs: &[f64], beta: f64, a: f64) -> f64 {
    let n = logs.len();
    let nf = n as f64;
    let b1 = beta + 1.0;
    // pair sums are symmetric in (j, k)
    let mut s = [0.0f64; 3];
    for j in 0..n {
        let w = mellin_weights(2.0 * logs[j], a);
        for m in 0..3 {
            s[m] += w[m];
        }
        for k in (j + 1)..n {
            let w = mellin_weights(logs[j] + logs[k], a);
            for m in 0..3 {
                s[m] += 2.0 * w[m];
            }
        }
    }
    let mut single0 = 0.0;
    let mut single1 = 0.0;
    for &l in logs {
        let w = mellin_weights(l, a);
        single0 += w[0];
        single1 += w[1];
    }
    let pair = (b1 * b1 * s[0] + s[2] + 2.0 * b1 * s[1]) / nf;
    let i0_at_one = 1.0 / a;
    pair + beta * (nf * beta * i0_at_one - 2.0 * b1 * single0 - 2.0 * single1)
}

/// Fitted CDF values at the order statistics, with log-CDF and log-survival.
struct EdfTerms {
    cdf: Vec<f64>,
    log_cdf: Vec<f64>,
    log_surv: Vec<f64>,
    clamped: bool,
}

impl EdfTerms {
    /// Builds the terms from the log-survival values at the order statistics.
    fn from_log_survival(log_surv: impl Iterator<Item = f64>) -> Self {
        let mut clamped = false;
        let mut cdf = Vec::new();
        let mut log_cdf = Vec::new();
        let mut ls = Vec::new();
        for mut s in log_surv {
            let mut f = -s.exp_m1();
            if f.is_nan() || f < DEGENERACY_EPS {
                f = DEGENERACY_EPS;
                clamped = true;
            }
            if f > 1.0 - DEGENERACY_EPS {
                // log survival is still exact here, but F itself saturates
                if !s.is_finite() {
                    s = DEGENERACY_EPS.ln();
                    clamped = true;
                }
            }
            cdf.push(f);
            log_cdf.push(f.ln());
            ls.push(s);
        }
        Self {
            cdf,
            log_cdf,
            log_surv: ls,
            clamped,
        }
    }

    fn pareto(logs: &[f64], beta: f64) -> Self {
        Self::from_log_survival(logs.iter().map(|&l| -beta * l))
    }

    fn n(&self) -> f64 {
        self.cdf.len() as f64
    }

    fn ks(&self) -> f64 {
        let n = self.n();
        self.cdf
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let j = (i + 1) as f64;
                (j / n - f).max(f - (j - 1.0) / n)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn cv(&self) -> f64 {
        let n = self.n();
        1.0 / (12.0 * n)
            + self
                .cdf
                .iter()
                .enumerate()
                .map(|(i, &f)| {
                    let d = f - (2.0 * (i + 1) as f64 - 1.0) / (2.0 * n);
                    d * d
                })
                .sum::<f64>()
    }

    fn ad(&self) -> f64 {
        let len = self.cdf.len();
        let n = self.n();
        let s: f64 = (0..len)
            .map(|i| (2.0 * (i + 1) as f64 - 1.0) * (self.log_cdf[i] + self.log_surv[len - 1 - i]))
            .sum();
        -n - s / n
    }

    fn za(&self) -> f64 {
        let n = self.n();
        -(0..self.cdf.len())
            .map(|i| {
                let j = (i + 1) as f64;
                self.log_cdf[i] / (n - j + 0.5) + self.log_surv[i] / (j - 0.5)
            })
            .sum::<f64>()
    }
}

fn value(kind: TestKind, value: f64, n: usize, beta: f64, clamped: bool) -> StatisticValue {
    StatisticValue {
        kind,
        value,
        n,
        beta_used: beta,
        clamped,
    }
}

pub fn mp1(sample: &Sample, beta: f64) -> Result<StatisticValue> {
    check_beta(beta)?;
    let v = mp1_from_logs(&sorted_logs(sample), beta);
    Ok(value(TestKind::Mp1, v, sample.len(), beta, false))
}

pub fn mp2(sample: &Sample, beta: f64) -> Result<StatisticValue> {
    check_beta(beta)?;
    let v = mp2_from_logs(&sorted_logs(sample), beta);
    Ok(value(TestKind::Mp2, v, sample.len(), beta, false))
}

pub fn ks(sample: &Sample, beta: f64) -> Result<StatisticValue> {
    check_beta(beta)?;
    let t = EdfTerms::pareto(&sorted_logs(sample), beta);
    Ok(value(TestKind::Ks, t.ks(), sample.len(), beta, t.clamped))
}

pub fn cv(sample: &Sample, beta: f64) -> Result<StatisticValue> {
    check_beta(beta)?;
    let t = EdfTerms::pareto(&sorted_logs(sample), beta);
    Ok(value(TestKind::Cv, t.cv(), sample.len(), beta, t.clamped))
}

pub fn ad(sample: &Sample, beta: f64) -> Result<StatisticValue> {
    check_beta(beta)?;
    let t = EdfTerms::pareto(&sorted_logs(sample), beta);
    Ok(value(TestKind::Ad, t.ad(), sample.len(), beta, t.clamped))
}

pub fn za(sample: &Sample, beta: f64) -> Result<StatisticValue> {
    check_beta(beta)?;
    let t = EdfTerms::pareto(&sorted_logs(sample), beta);
    Ok(value(TestKind::Za, t.za(), sample.len(), beta, t.clamped))
}

/// Mellin-transform statistic with weight `exp(-a t)`, built from the
/// closed-form integrals in [`mellin_weights`].
pub fn mellin_g(sample: &Sample, beta: f64, a: f64) -> Result<StatisticValue> {
    check_beta(beta)?;
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!("Mellin tuning parameter must be positive, got {a}")));
    }
    let v = mellin_from_logs(&sorted_logs(sample), beta, a);
    Ok(value(TestKind::MellinG { a }, v, sample.len(), beta, false))
}

/// KS, CV, AD and ZA for exponentiality on `Y = log X`, with the exponential
/// rate estimated by maximum likelihood.
pub fn exp_edf_suite(sample: &Sample) -> Result<Vec<StatisticValue>> {
    let y = sorted_logs(sample);
    let total: f64 = y.iter().sum();
    let rate = y.len() as f64 / total;
    check_beta(rate)?;
    let t = EdfTerms::from_log_survival(y.iter().map(|&yj| -rate * yj));
    let n = sample.len();
    Ok(vec![
        value(TestKind::ExpKs, t.ks(), n, rate, t.clamped),
        value(TestKind::ExpCv, t.cv(), n, rate, t.clamped),
        value(TestKind::ExpAd, t.ad(), n, rate, t.clamped),
        value(TestKind::ExpZa, t.za(), n, rate, t.clamped),
    ])
}

/// Evaluates one statistic on `sample` with a raw shape value plugged in.
pub fn statistic(kind: TestKind, sample: &Sample, beta: f64) -> Result<StatisticValue> {
    match kind {
        TestKind::Mp1 => mp1(sample, beta),
        TestKind::Mp2 => mp2(sample, beta),
        TestKind::Ks => ks(sample, beta),
        TestKind::Cv => cv(sample, beta),
        TestKind::Ad => ad(sample, beta),
        TestKind::Za => za(sample, beta),
        TestKind::MellinG { a } => mellin_g(sample, beta, a),
        _ => exp_edf_suite(sample)?
            .into_iter()
            .find(|v| v.kind == kind)
            .ok_or_else(|| Error::Argument(format!("{kind} has no shape argument"))),
    }
}

/// Log-observations prepared for one estimator convention, shared by all
/// statistics computed on the same sample.
#[derive(Debug, Clone)]
pub struct Prepared {
    /// Ascending logs of the (possibly transformed) sample.
    logs: Vec<f64>,
    /// Shape fed to the kernels: 1 on the MLE path, the MME otherwise.
    kernel_beta: f64,
    /// The estimate itself.
    estimate: f64,
    /// Untransformed logs, for the exponentiality tests.
    raw_logs: Vec<f64>,
}

impl Prepared {
    pub fn new(sample: &Sample, estimator: Estimator) -> Result<Self> {
        let raw_logs = sorted_logs(sample);
        let est = estimate(estimator, sample)?;
        let (logs, kernel_beta) = match estimator {
            // log(X^b) = b log X: the pivotal transform without a round trip
            Estimator::Mle => (raw_logs.iter().map(|l| est.beta * l).collect(), 1.0),
            Estimator::Mme => (raw_logs.clone(), est.beta),
        };
        Ok(Self {
            logs,
            kernel_beta,
            estimate: est.beta,
            raw_logs,
        })
    }

    pub fn estimate(&self) -> f64 {
        self.estimate
    }

    pub fn n(&self) -> usize {
        self.logs.len()
    }

    pub fn eval(&self, kind: TestKind) -> StatisticValue {
        let n = self.n();
        let b = self.kernel_beta;
        let pareto_terms = || EdfTerms::pareto(&self.logs, b);
        let (v, clamped) = match kind {
            TestKind::Mp1 => (mp1_from_logs(&self.logs, b), false),
            TestKind::Mp2 => (mp2_from_logs(&self.logs, b), false),
            TestKind::MellinG { a } => (mellin_from_logs(&self.logs, b, a), false),
            TestKind::Ks => {
                let t = pareto_terms();
                (t.ks(), t.clamped)
            }
            TestKind::Cv => {
                let t = pareto_terms();
                (t.cv(), t.clamped)
            }
            TestKind::Ad => {
                let t = pareto_terms();
                (t.ad(), t.clamped)
            }
            TestKind::Za => {
                let t = pareto_terms();
                (t.za(), t.clamped)
            }
            TestKind::ExpKs | TestKind::ExpCv | TestKind::ExpAd | TestKind::ExpZa => {
                let rate = n as f64 / self.raw_logs.iter().sum::<f64>();
                let t = EdfTerms::from_log_survival(self.raw_logs.iter().map(|&y| -rate * y));
                let v = match kind {
                    TestKind::ExpKs => t.ks(),
                    TestKind::ExpCv => t.cv(),
                    TestKind::ExpAd => t.ad(),
                    _ => t.za(),
                };
                return value(kind, v, n, rate, t.clamped);
            }
        };
        value(kind, v, n, self.estimate, clamped)
    }

    /// Evaluates several statistics, sharing the EDF terms between them.
    pub fn eval_values(&self, kinds: &[TestKind]) -> Vec<f64> {
        let mut pareto: Option<EdfTerms> = None;
        let mut exp: Option<EdfTerms> = None;
        let b = self.kernel_beta;
        kinds
            .iter()
            .map(|&kind| match kind {
                TestKind::Mp1 => mp1_from_logs(&self.logs, b),
                TestKind::Mp2 => mp2_from_logs(&self.logs, b),
                TestKind::MellinG { a } => mellin_from_logs(&self.logs, b, a),
                TestKind::Ks | TestKind::Cv | TestKind::Ad | TestKind::Za => {
                    let t = pareto.get_or_insert_with(|| EdfTerms::pareto(&self.logs, b));
                    match kind {
                        TestKind::Ks => t.ks(),
                        TestKind::Cv => t.cv(),
                        TestKind::Ad => t.ad(),
                        _ => t.za(),
                    }
                }
                _ => {
                    let t = exp.get_or_insert_with(|| {
                        let rate = self.n() as f64 / self.raw_logs.iter().sum::<f64>();
                        EdfTerms::from_log_survival(self.raw_logs.iter().map(|&y| -rate * y))
                    });
                    match kind {
                        TestKind::ExpKs => t.ks(),
                        TestKind::ExpCv => t.cv(),
                        TestKind::ExpAd => t.ad(),
                        _ => t.za(),
                    }
                }
            })
            .collect()
    }
}

/// Evaluates `kind` on `sample` under the given estimator convention.
///
/// On the MLE path the statistic is computed on the pivotal transform
/// `X_j^beta_mle` with `beta = 1`. For every statistic except the Mellin one
/// this equals plugging `beta_mle` into the raw data; for the Mellin statistic
/// it is what makes the null distribution shape-free.
pub fn evaluate(kind: TestKind, estimator: Estimator, sample: &Sample) -> Result<StatisticValue> {
    if !kind.supports(estimator) {
        return Err(Error::Unsupported(format!(
            "{kind} estimates its own rate and is only defined on the MLE path"
        )));
    }
    Ok(Prepared::new(sample, estimator)?.eval(kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::pareto_sample;
    use crate::rng::RandomStream;

    fn near_one() -> Sample {
        Sample::new(vec![1.0 + 1e-12]).unwrap()
    }

    #[test]
    fn mp_limits_at_support_endpoint() {
        for beta in [0.5, 1.0, 3.0] {
            assert!((mp1(&near_one(), beta).unwrap().value - 0.2).abs() < 1e-9);
            assert!((mp2(&near_one(), beta).unwrap().value - 1.0 / 9.0).abs() < 1e-9);
        }
    }

    #[test]
    fn single_observation_at_median() {
        // F(2) = 1/2 when beta = 1
        let s = Sample::new(vec![2.0]).unwrap();
        assert!((ks(&s, 1.0).unwrap().value - 0.5).abs() < 1e-15);
        assert!((cv(&s, 1.0).unwrap().value - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn mellin_weights_at_one() {
        let w = mellin_weights(0.0, 1.0);
        assert_eq!(w, [1.0, 0.0, 1.0]);
    }

    #[test]
    fn weights_sum_to_n_squared() {
        for n in 1..60 {
            let total: f64 = (1..=n).map(|j| order_weight(j, n)).sum();
            assert_eq!(total, (n * n) as f64);
            let direct: f64 = (1..=n)
                .map(|j| ((n - j + 1).pow(2) - (n - j).pow(2)) as f64)
                .sum();
            assert_eq!(total, direct);
        }
    }

    #[test]
    fn za_two_points_by_hand() {
        // F values 1/4 and 3/4 under beta = 1: x = 4/3 and x = 4
        let s = Sample::new(vec![4.0, 4.0 / 3.0]).unwrap();
        let f: [f64; 2] = [0.25, 0.75];
        let expected = -((f[0].ln() / 1.5 + (1.0 - f[0]).ln() / 0.5)
            + (f[1].ln() / 0.5 + (1.0 - f[1]).ln() / 1.5));
        assert!((za(&s, 1.0).unwrap().value - expected).abs() < 1e-12);
        let ad_expected = -2.0
            - 0.5 * ((f[0].ln() + (1.0 - f[1]).ln()) + 3.0 * (f[1].ln() + (1.0 - f[0]).ln()));
        assert!((ad(&s, 1.0).unwrap().value - ad_expected).abs() < 1e-12);
    }

    #[test]
    fn exp_ks_two_points_by_hand() {
        // y = exponential quantiles at 1/3 and 2/3 for rate 1; rate MLE rescales
        let y: [f64; 2] = [-(2.0f64 / 3.0).ln(), -(1.0f64 / 3.0).ln()];
        let s = Sample::new(y.iter().map(|v| v.exp()).collect()).unwrap();
        let rate = 2.0 / (y[0] + y[1]);
        let f: Vec<f64> = y.iter().map(|v| 1.0 - (-rate * v).exp()).collect();
        let expected = (0.5 - f[0]).max(f[0]).max((1.0 - f[1]).max(f[1] - 0.5));
        let suite = exp_edf_suite(&s).unwrap();
        assert_eq!(suite[0].kind, TestKind::ExpKs);
        assert!((suite[0].value - expected).abs() < 1e-14);
    }

    #[test]
    fn exp_suite_matches_mle_path() {
        let mut rng = RandomStream::new(3, 3);
        let s = pareto_sample(2.5, 25, &mut rng).unwrap();
        let p = Prepared::new(&s, Estimator::Mle).unwrap();
        for (e, k) in TestKind::EXPONENTIAL.iter().zip([TestKind::Ks, TestKind::Cv, TestKind::Ad, TestKind::Za]) {
            let a = p.eval(*e).value;
            let b = p.eval(k).value;
            assert!((a - b).abs() < 1e-10 * (1.0 + b.abs()), "{e} {a} {b}");
        }
    }

    #[test]
    fn eval_values_matches_eval() {
        let mut rng = RandomStream::new(5, 1);
        let s = pareto_sample(1.3, 17, &mut rng).unwrap();
        for est in Estimator::ALL {
            let p = Prepared::new(&s, est).unwrap();
            let kinds = TestKind::all();
            let batch = p.eval_values(&kinds);
            for (k, v) in kinds.iter().zip(batch) {
                assert_eq!(v.to_bits(), p.eval(*k).value.to_bits(), "{k}");
            }
        }
    }

    #[test]
    fn exponential_kinds_reject_mme() {
        let s = Sample::new(vec![2.0, 3.0]).unwrap();
        assert!(matches!(
            evaluate(TestKind::ExpKs, Estimator::Mme, &s),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn kind_parsing_round_trips() {
        for k in TestKind::all() {
            assert_eq!(k.key().parse::<TestKind>().unwrap(), k);
        }
        let g2: TestKind = "g:2".parse().unwrap();
        assert_eq!(g2, TestKind::MellinG { a: 2.0 });
        assert_eq!(g2.key().parse::<TestKind>().unwrap(), g2);
        assert!("g:0".parse::<TestKind>().is_err());
        assert!("nope".parse::<TestKind>().is_err());
    }

    #[test]
    fn degenerate_cdf_is_clamped() {
        let s = Sample::new(vec![1.0 + f64::EPSILON, 2.0]).unwrap();
        let v = ad(&s, 1e-3).unwrap();
        assert!(v.value.is_finite());
        let tiny = Sample::new(vec![1.0 + f64::EPSILON]).unwrap();
        let v = za(&tiny, 1e-6).unwrap();
        assert!(v.clamped);
        assert!(v.value.is_finite());
    }
}
