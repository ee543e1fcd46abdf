//! Critical values, p-values and power.
//!
//! Replication `r` of any simulation draws from `RandomStream::new(seed,
//! 16 r + attempt)`, so results are identical regardless of the number of
//! worker threads. Empirical upper quantiles use the `ceil((1 - alpha) R)`-th
//! order statistic of `R` simulated values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{pareto_sample, Sample, Scenario};
use crate::error::{Error, Result};
use crate::estimation::{estimate, Estimator};
use crate::rng::RandomStream;
use crate::statistics::{Prepared, TestKind};

/// Redraw budget for a replication whose estimator fails.
pub const MAX_REDRAWS: u64 = 10;
const STREAM_STRIDE: u64 = 16;

/// Smallest replication count accepted for critical values and bootstraps.
pub const MIN_REPS: usize = 1000;

const CACHE_HEADER: &str = "# pareto-gof critical values";
const CACHE_VERSION: &str = "version,1";
const CACHE_COLUMNS: &str = "kind,estimator,n,alpha,reps,seed,value";

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::Argument(format!("significance level must lie in (0, 1], got {alpha}")))
    }
}

fn check_reps(reps: usize, what: &str) -> Result<()> {
    if reps < MIN_REPS {
        Err(Error::Argument(format!("{what} needs at least {MIN_REPS} replications, got {reps}")))
    } else {
        Ok(())
    }
}

fn check_kinds(kinds: &[TestKind], estimator: Estimator) -> Result<()> {
    if kinds.is_empty() {
        return Err(Error::Argument("no test statistics requested".into()));
    }
    match kinds.iter().find(|k| !k.supports(estimator)) {
        Some(k) => Err(Error::Unsupported(format!("{k} is not defined with the {estimator}"))),
        None => Ok(()),
    }
}

/// 1-based rank of the order statistic used as the upper `alpha` quantile.
pub fn quantile_rank(alpha: f64, reps: usize) -> usize {
    // guard against (1 - 0.05) * 10000 = 9500.000000000002
    let k = ((1.0 - alpha) * reps as f64 - 1e-9).ceil();
    (k.max(1.0) as usize).min(reps)
}

/// The `ceil((1 - alpha) R)`-th smallest of `values` (reorders the slice).
pub fn upper_quantile(values: &mut [f64], alpha: f64) -> f64 {
    assert!(!values.is_empty());
    let k = quantile_rank(alpha, values.len());
    let (_, v, _) = values.select_nth_unstable_by(k - 1, f64::total_cmp);
    *v
}

/// Runs one replication, redrawing when `attempt` fails, and returns its
/// output together with the number of redraws used.
fn with_redraws<T>(
    seed: u64,
    rep: usize,
    mut attempt: impl FnMut(&mut RandomStream) -> Result<T>,
) -> Result<(T, u64)> {
    let mut last = None;
    for k in 0..=MAX_REDRAWS {
        let mut rng = RandomStream::new(seed, rep as u64 * STREAM_STRIDE + k);
        match attempt(&mut rng) {
            Ok(v) => return Ok((v, k)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Simulated null distribution of several MLE-path statistics under `P(1)`.
/// Returns one vector of `reps` values per kind.
pub fn null_distribution(
    kinds: &[TestKind],
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    check_kinds(kinds, Estimator::Mle)?;
    let rows: Vec<Vec<f64>> = (0..reps)
        .into_par_iter()
        .map(|r| {
            with_redraws(seed, r, |rng| {
                let s = pareto_sample(1.0, n, rng)?;
                Ok(Prepared::new(&s, Estimator::Mle)?.eval_values(kinds))
            })
            .map(|(v, _)| v)
        })
        .collect::<Result<_>>()?;
    Ok(transpose(rows, kinds.len()))
}

fn transpose(rows: Vec<Vec<f64>>, width: usize) -> Vec<Vec<f64>> {
    let mut cols = vec![Vec::with_capacity(rows.len()); width];
    for row in rows {
        for (c, v) in cols.iter_mut().zip(row) {
            c.push(v);
        }
    }
    cols
}

/// Monte Carlo critical value of an MLE-path statistic. The MLE path is
/// pivotal, so simulating under `P(1)` covers every shape.
pub fn null_critical_value(
    kind: TestKind,
    estimator: Estimator,
    n: usize,
    alpha: f64,
    reps: usize,
    seed: u64,
) -> Result<f64> {
    if estimator != Estimator::Mle {
        return Err(Error::Unsupported(format!(
            "{kind} with the {estimator} has no shape-free null distribution; \
             use the parametric bootstrap instead"
        )));
    }
    check_alpha(alpha)?;
    check_reps(reps, "a critical value")?;
    let mut dist = null_distribution(&[kind], n, reps, seed)?.remove(0);
    Ok(upper_quantile(&mut dist, alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalValueEntry {
    pub value: f64,
    pub reps: usize,
    pub seed: u64,
}

type CvKey = (String, Estimator, usize, u64);

fn alpha_key(alpha: f64) -> u64 {
    (alpha * 1e9).round() as u64
}

/// Critical values keyed by statistic, estimator, sample size and level.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CriticalValueTable {
    entries: BTreeMap<CvKey, (f64, CriticalValueEntry)>,
}

impl CriticalValueTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        kind: TestKind,
        estimator: Estimator,
        n: usize,
        alpha: f64,
        entry: CriticalValueEntry,
    ) {
        self.entries
            .insert((kind.key(), estimator, n, alpha_key(alpha)), (alpha, entry));
    }

    pub fn get(&self, kind: TestKind, estimator: Estimator, n: usize, alpha: f64) -> Option<CriticalValueEntry> {
        self.entries
            .get(&(kind.key(), estimator, n, alpha_key(alpha)))
            .map(|(_, e)| *e)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Simulates the MLE-path null once per sample size and reads off every
    /// requested level. Seeds per `n` are `seed` itself, so a single-kind
    /// [`null_critical_value`] call with the same seed gives the same value.
    pub fn simulate(
        kinds: &[TestKind],
        ns: &[usize],
        alphas: &[f64],
        reps: usize,
        seed: u64,
    ) -> Result<Self> {
        check_reps(reps, "a critical value")?;
        for &a in alphas {
            check_alpha(a)?;
        }
        let mut table = Self::new();
        for &n in ns {
            let dists = null_distribution(kinds, n, reps, seed)?;
            for (kind, mut dist) in kinds.iter().zip(dists) {
                for &alpha in alphas {
                    let value = upper_quantile(&mut dist, alpha);
                    table.insert(*kind, Estimator::Mle, n, alpha, CriticalValueEntry { value, reps, seed });
                }
            }
        }
        Ok(table)
    }

    /// Adds whatever is missing from `self` for the requested grid, returning
    /// the number of entries simulated.
    pub fn ensure(
        &mut self,
        kinds: &[TestKind],
        ns: &[usize],
        alphas: &[f64],
        reps: usize,
        seed: u64,
    ) -> Result<usize> {
        let mut added = 0;
        for &n in ns {
            let missing: Vec<TestKind> = kinds
                .iter()
                .copied()
                .filter(|k| {
                    alphas.iter().any(|&a| {
                        !matches!(self.get(*k, Estimator::Mle, n, a),
                            Some(e) if e.reps >= reps && e.seed == seed)
                    })
                })
                .collect();
            if missing.is_empty() {
                continue;
            }
            let fresh = Self::simulate(&missing, &[n], alphas, reps, seed)?;
            added += fresh.len();
            self.entries.extend(fresh.entries);
        }
        Ok(added)
    }

    /// Versioned plain-text rendering, one row per entry.
    pub fn to_text(&self) -> String {
        let mut out = format!("{CACHE_HEADER}\n{CACHE_VERSION}\n{CACHE_COLUMNS}\n");
        for ((kind, est, n, _), (alpha, e)) in &self.entries {
            let _ = writeln!(out, "{kind},{est},{n},{alpha},{},{},{:?}", e.reps, e.seed, e.value);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            path: "<critical values>".into(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut expect = |want: &str| match lines.next() {
            Some((_, l)) if l.trim() == want => Ok(()),
            Some((i, l)) => Err(parse_err(i + 1, format!("expected `{want}`, found `{l}`"))),
            None => Err(parse_err(0, format!("missing `{want}`"))),
        };
        expect(CACHE_HEADER)?;
        expect(CACHE_VERSION)?;
        expect(CACHE_COLUMNS)?;
        let mut table = Self::new();
        for (i, line) in lines {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 7 {
                return Err(parse_err(i + 1, format!("expected 7 fields, found {}", f.len())));
            }
            let bad = |what: &str| parse_err(i + 1, format!("bad {what}"));
            let kind: TestKind = f[0].parse().map_err(|_| bad("kind"))?;
            let est: Estimator = f[1].parse().map_err(|_| bad("estimator"))?;
            let n: usize = f[2].parse().map_err(|_| bad("n"))?;
            let alpha: f64 = f[3].parse().map_err(|_| bad("alpha"))?;
            let reps: usize = f[4].parse().map_err(|_| bad("reps"))?;
            let seed: u64 = f[5].parse().map_err(|_| bad("seed"))?;
            let value: f64 = f[6].parse().map_err(|_| bad("value"))?;
            table.insert(kind, est, n, alpha, CriticalValueEntry { value, reps, seed });
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text).map_err(|e| match e {
            Error::Parse { line, message, .. } => Error::Parse {
                path: path.to_path_buf(),
                line,
                message,
            },
            other => other,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub alpha: f64,
    pub reject: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub kind: TestKind,
    pub estimator: Estimator,
    pub statistic: f64,
    pub beta_hat: f64,
    pub critical_value: Option<f64>,
    pub p_value: Option<f64>,
    pub reject_at: Vec<Decision>,
}

impl TestResult {
    pub fn rejects(&self, alpha: f64) -> Option<bool> {
        self.reject_at
            .iter()
            .find(|d| (d.alpha - alpha).abs() < 1e-12)
            .map(|d| d.reject)
            .or_else(|| self.p_value.map(|p| p <= alpha))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerEstimate {
    pub scenario: Scenario,
    pub kind: TestKind,
    pub estimator: Estimator,
    pub n: usize,
    pub alpha: f64,
    pub power: f64,
    pub std_error: f64,
    pub replications: usize,
    pub seed: u64,
    /// Replications that needed a redraw because estimation failed.
    pub redraws: u64,
}

fn binomial_se(p: f64, reps: usize) -> f64 {
    (p * (1.0 - p) / reps as f64).sqrt()
}

/// Power of several MLE-path statistics with critical values taken from
/// `table`. All statistics share the same simulated alternative samples.
#[allow(clippy::too_many_arguments)]
pub fn fixed_critical_powers(
    kinds: &[TestKind],
    scenario: &Scenario,
    n: usize,
    alpha: f64,
    reps: usize,
    table: &CriticalValueTable,
    seed: u64,
) -> Result<Vec<PowerEstimate>> {
    check_kinds(kinds, Estimator::Mle)?;
    check_alpha(alpha)?;
    if reps == 0 {
        return Err(Error::Argument("power needs at least one replication".into()));
    }
    let crit: Vec<f64> = kinds
        .iter()
        .map(|k| {
            table.get(*k, Estimator::Mle, n, alpha).map(|e| e.value).ok_or_else(|| {
                Error::Config(format!("no critical value for {k}, MLE, n = {n}, alpha = {alpha}"))
            })
        })
        .collect::<Result<_>>()?;
    let rows: Vec<(Vec<f64>, u64)> = (0..reps)
        .into_par_iter()
        .map(|r| {
            with_redraws(seed, r, |rng| {
                let s = scenario.sample(n, rng)?;
                Ok(Prepared::new(&s, Estimator::Mle)?.eval_values(kinds))
            })
        })
        .collect::<Result<_>>()?;
    let redraws = rows.iter().map(|(_, k)| *k).sum();
    Ok(kinds
        .iter()
        .enumerate()
        .map(|(i, &kind)| {
            let hits = rows.iter().filter(|(v, _)| v[i] > crit[i]).count();
            let power = hits as f64 / reps as f64;
            PowerEstimate {
                scenario: *scenario,
                kind,
                estimator: Estimator::Mle,
                n,
                alpha,
                power,
                std_error: binomial_se(power, reps),
                replications: reps,
                seed,
                redraws,
            }
        })
        .collect())
}

pub fn power_fixed_critical(
    kind: TestKind,
    scenario: &Scenario,
    n: usize,
    alpha: f64,
    reps: usize,
    table: &CriticalValueTable,
    seed: u64,
) -> Result<PowerEstimate> {
    Ok(fixed_critical_powers(&[kind], scenario, n, alpha, reps, table, seed)?.remove(0))
}

/// Warp-speed bootstrap power for several statistics sharing the simulated
/// samples.
///
/// Each replication draws one sample from `scenario`, estimates the shape,
/// evaluates the statistics, then draws a single bootstrap sample of size `n`
/// from `P(beta_hat)` and evaluates the statistics on it under the same
/// estimator. The critical value is the upper `alpha` quantile of the pooled
/// bootstrap statistics.
pub fn warp_speed_powers(
    kinds: &[TestKind],
    estimator: Estimator,
    scenario: &Scenario,
    n: usize,
    alpha: f64,
    reps: usize,
    seed: u64,
) -> Result<Vec<PowerEstimate>> {
    check_kinds(kinds, estimator)?;
    check_alpha(alpha)?;
    if reps == 0 {
        return Err(Error::Argument("power needs at least one replication".into()));
    }
    type Pair = (Vec<f64>, Vec<f64>);
    let rows: Vec<(Pair, u64)> = (0..reps)
        .into_par_iter()
        .map(|r| {
            with_redraws(seed, r, |rng| {
                let s = scenario.sample(n, rng)?;
                let prep = Prepared::new(&s, estimator)?;
                let observed = prep.eval_values(kinds);
                let boot = pareto_sample(prep.estimate(), n, rng)?;
                let boot_stats = Prepared::new(&boot, estimator)?.eval_values(kinds);
                Ok((observed, boot_stats))
            })
        })
        .collect::<Result<_>>()?;
    let redraws = rows.iter().map(|(_, k)| *k).sum();
    Ok(kinds
        .iter()
        .enumerate()
        .map(|(i, &kind)| {
            let mut boot: Vec<f64> = rows.iter().map(|((_, b), _)| b[i]).collect();
            let crit = upper_quantile(&mut boot, alpha);
            let hits = rows.iter().filter(|((o, _), _)| o[i] > crit).count();
            let power = hits as f64 / reps as f64;
            PowerEstimate {
                scenario: *scenario,
                kind,
                estimator,
                n,
                alpha,
                power,
                std_error: binomial_se(power, reps),
                replications: reps,
                seed,
                redraws,
            }
        })
        .collect())
}

pub fn warp_speed_power(
    kind: TestKind,
    estimator: Estimator,
    scenario: &Scenario,
    n: usize,
    alpha: f64,
    reps: usize,
    seed: u64,
) -> Result<PowerEstimate> {
    Ok(warp_speed_powers(&[kind], estimator, scenario, n, alpha, reps, seed)?.remove(0))
}

fn decisions(alphas: &[f64], reject: impl Fn(f64) -> bool) -> Vec<Decision> {
    alphas.iter().map(|&alpha| Decision { alpha, reject: reject(alpha) }).collect()
}

/// How bootstrap samples are re-fitted before their statistics are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Refit {
    /// Re-estimate with the estimator under test.
    #[default]
    Same,
    /// Always re-estimate with the method of moments, whatever estimator
    /// generated the bootstrap population. Matches the reference golf
    /// p-values for the MLE columns.
    Moments,
}

impl Refit {
    /// Estimator applied to bootstrap samples when testing with `base`.
    pub fn estimator(self, base: Estimator) -> Estimator {
        match self {
            Refit::Same => base,
            Refit::Moments => Estimator::Mme,
        }
    }
}

impl std::str::FromStr for Refit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "same" => Ok(Refit::Same),
            "mme" | "moments" => Ok(Refit::Moments),
            other => Err(Error::Argument(format!("unknown refit `{other}` (same|mme)"))),
        }
    }
}

/// `(1 + #{T* >= T}) / (B + 1)`.
pub fn bootstrap_p(observed: f64, boot: &[f64]) -> f64 {
    let exceed = boot.iter().filter(|&&t| t >= observed).count();
    (1 + exceed) as f64 / (boot.len() + 1) as f64
}

/// Parametric bootstrap p-values for several statistics on one data set.
/// The `B` bootstrap samples are drawn from `P(beta_hat)` and re-estimated
/// under the same estimator.
pub fn bootstrap_pvalues(
    kinds: &[TestKind],
    estimator: Estimator,
    sample: &Sample,
    b: usize,
    seed: u64,
    alphas: &[f64],
) -> Result<Vec<TestResult>> {
    bootstrap_pvalues_with(kinds, estimator, Refit::Same, sample, b, seed, alphas)
}

/// [`bootstrap_pvalues`] with an explicit re-fitting rule for the bootstrap
/// samples.
pub fn bootstrap_pvalues_with(
    kinds: &[TestKind],
    estimator: Estimator,
    refit: Refit,
    sample: &Sample,
    b: usize,
    seed: u64,
    alphas: &[f64],
) -> Result<Vec<TestResult>> {
    check_kinds(kinds, estimator)?;
    let refit_with = refit.estimator(estimator);
    check_kinds(kinds, refit_with)?;
    check_reps(b, "the bootstrap")?;
    let n = sample.len();
    let prep = Prepared::new(sample, estimator)?;
    let observed = prep.eval_values(kinds);
    let beta_hat = prep.estimate();
    let rows: Vec<Vec<f64>> = (0..b)
        .into_par_iter()
        .map(|r| {
            with_redraws(seed, r, |rng| {
                let s = pareto_sample(beta_hat, n, rng)?;
                Ok(Prepared::new(&s, refit_with)?.eval_values(kinds))
            })
            .map(|(v, _)| v)
        })
        .collect::<Result<_>>()?;
    let cols = transpose(rows, kinds.len());
    Ok(kinds
        .iter()
        .zip(observed)
        .zip(cols)
        .map(|((&kind, stat), boot)| {
            let p = bootstrap_p(stat, &boot);
            TestResult {
                kind,
                estimator,
                statistic: stat,
                beta_hat,
                critical_value: None,
                p_value: Some(p),
                reject_at: decisions(alphas, |a| p <= a),
            }
        })
        .collect())
}

pub fn bootstrap_pvalue(
    kind: TestKind,
    estimator: Estimator,
    sample: &Sample,
    b: usize,
    seed: u64,
) -> Result<TestResult> {
    Ok(bootstrap_pvalues(&[kind], estimator, sample, b, seed, &[0.01, 0.05, 0.10])?.remove(0))
}

/// MLE-path p-values and critical values from the simulated `P(1)` null.
pub fn pivotal_pvalues(
    kinds: &[TestKind],
    sample: &Sample,
    reps: usize,
    seed: u64,
    alphas: &[f64],
) -> Result<Vec<TestResult>> {
    check_kinds(kinds, Estimator::Mle)?;
    check_reps(reps, "the null simulation")?;
    let prep = Prepared::new(sample, Estimator::Mle)?;
    let observed = prep.eval_values(kinds);
    let dists = null_distribution(kinds, sample.len(), reps, seed)?;
    Ok(kinds
        .iter()
        .zip(observed)
        .zip(dists)
        .map(|((&kind, stat), mut dist)| {
            let p = bootstrap_p(stat, &dist);
            let crits: Vec<f64> = alphas.iter().map(|&a| upper_quantile(&mut dist, a)).collect();
            let reject_at = alphas
                .iter()
                .zip(&crits)
                .map(|(&alpha, &c)| Decision { alpha, reject: stat > c })
                .collect();
            TestResult {
                kind,
                estimator: Estimator::Mle,
                statistic: stat,
                beta_hat: prep.estimate(),
                critical_value: crits.first().copied(),
                p_value: Some(p),
                reject_at,
            }
        })
        .collect())
}

/// Decision against a tabulated critical value.
pub fn test_with_critical_value(
    kind: TestKind,
    sample: &Sample,
    alpha: f64,
    table: &CriticalValueTable,
) -> Result<TestResult> {
    let crit = table
        .get(kind, Estimator::Mle, sample.len(), alpha)
        .ok_or_else(|| Error::Config(format!("no critical value for {kind}, n = {}, alpha = {alpha}", sample.len())))?;
    let prep = Prepared::new(sample, Estimator::Mle)?;
    let stat = prep.eval(kind).value;
    Ok(TestResult {
        kind,
        estimator: Estimator::Mle,
        statistic: stat,
        beta_hat: estimate(Estimator::Mle, sample)?.beta,
        critical_value: Some(crit.value),
        p_value: None,
        reject_at: vec![Decision { alpha, reject: stat > crit.value }],
    })
}
