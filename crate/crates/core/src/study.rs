//! Power studies, the golf earnings application and table rendering.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::distributions::{AltFamily, AlternativeSpec, Contaminant, MixtureSpec, Sample, Scenario};
use crate::error::{Error, Result};
use crate::estimation::Estimator;
use crate::inference::{
    bootstrap_pvalues_with, fixed_critical_powers, warp_speed_powers, CriticalValueTable, PowerEstimate,
    Refit, TestResult, MIN_REPS,
};
use crate::rng::{derive_seed, label_hash};
use crate::statistics::TestKind;

/// Replication counts of the full-scale study.
pub const FULL_CRITICAL_REPS: usize = 100_000;
pub const FULL_POWER_REPS: usize = 10_000;
pub const FULL_WARP_REPS: usize = 50_000;

/// Mixing proportions of the mixture tables.
pub const MIXTURE_PROPORTIONS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Rows of the fixed-alternative power tables, in table order.
pub fn fixed_alternative_grid() -> Vec<Scenario> {
    use AltFamily::*;
    let rows: [(AltFamily, &[f64]); 9] = [
        (Pareto, &[2.0, 5.0, 10.0]),
        (Gamma, &[0.8, 1.0, 1.2]),
        (Weibull, &[0.8, 1.2, 1.5]),
        (LogNormal, &[1.0, 1.5, 2.5]),
        (HalfNormal, &[0.5, 1.0, 1.2]),
        (LinearFailureRate, &[0.2, 0.8, 1.0]),
        (BetaExponential, &[0.8, 1.0, 1.5]),
        (TiltedPareto, &[1.0, 2.0, 3.0]),
        (Dhillon, &[0.4, 0.6, 0.8]),
    ];
    rows.iter()
        .flat_map(|(f, thetas)| {
            thetas
                .iter()
                .map(move |&t| Scenario::Alternative(AlternativeSpec::new(*f, t).expect("grid value")))
        })
        .collect()
}

/// Mixture rows for one contaminant, contaminant mean 3.
pub fn mixture_grid(contaminant: Contaminant) -> Vec<Scenario> {
    MIXTURE_PROPORTIONS
        .iter()
        .map(|&p| Scenario::Mixture(MixtureSpec::with_default_mean(p, contaminant).expect("grid value")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub sample_sizes: Vec<usize>,
    pub alpha: f64,
    pub tests: Vec<TestKind>,
    pub estimators: Vec<Estimator>,
    pub scenarios: Vec<Scenario>,
    pub critical_reps: usize,
    pub power_reps: usize,
    pub warp_reps: usize,
    pub seed: u64,
    /// Optional on-disk cache for the MLE critical values.
    pub critical_cache: Option<PathBuf>,
}

impl Default for StudyConfig {
    /// Desk scale (factor 0.1) of the full study over the fixed alternatives.
    fn default() -> Self {
        Self::full_scale().scaled(0.1).expect("0.1 is a valid factor")
    }
}

impl StudyConfig {
    pub fn full_scale() -> Self {
        Self {
            sample_sizes: vec![20, 30],
            alpha: 0.05,
            tests: TestKind::all(),
            estimators: Estimator::ALL.to_vec(),
            scenarios: fixed_alternative_grid(),
            critical_reps: FULL_CRITICAL_REPS,
            power_reps: FULL_POWER_REPS,
            warp_reps: FULL_WARP_REPS,
            seed: 20_240_101,
            critical_cache: None,
        }
    }

    /// Multiplies every replication count by `factor`.
    pub fn scaled(mut self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor <= 1.0) {
            return Err(Error::Config(format!("scale factor must lie in (0, 1], got {factor}")));
        }
        let scale = |r: usize| (r as f64 * factor).round() as usize;
        self.critical_reps = scale(self.critical_reps);
        self.power_reps = scale(self.power_reps);
        self.warp_reps = scale(self.warp_reps);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_sizes.is_empty() || self.sample_sizes.iter().any(|&n| n < 2) {
            return Err(Error::Config("sample sizes must be non-empty and at least 2".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.tests.is_empty() || self.estimators.is_empty() {
            return Err(Error::Config("at least one test and one estimator are required".into()));
        }
        for (name, r) in [
            ("critical", self.critical_reps),
            ("power", self.power_reps),
            ("warp-speed", self.warp_reps),
        ] {
            if r < MIN_REPS {
                return Err(Error::Config(format!(
                    "{name} replications must be at least {MIN_REPS} after scaling, got {r}"
                )));
            }
        }
        Ok(())
    }

    /// Table columns: every requested test with every applicable estimator.
    pub fn columns(&self) -> Vec<(TestKind, Estimator)> {
        self.tests
            .iter()
            .flat_map(|&k| {
                self.estimators
                    .iter()
                    .filter(move |e| k.supports(**e))
                    .map(move |&e| (k, e))
            })
            .collect()
    }

    /// Seed of one table cell group, derived from the master seed.
    pub fn cell_seed(&self, scenario: &Scenario, n: usize, estimator: Estimator) -> u64 {
        derive_seed(
            self.seed,
            &[label_hash(&scenario.label()), n as u64, label_hash(estimator.name())],
        )
    }

    pub fn critical_seed(&self) -> u64 {
        derive_seed(self.seed, &[label_hash("critical values")])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerRow {
    pub scenario: Scenario,
    pub n: usize,
    /// Aligned with [`PowerTable::columns`]; `None` when the cell failed.
    pub cells: Vec<Option<PowerEstimate>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerTable {
    pub columns: Vec<(TestKind, Estimator)>,
    pub rows: Vec<PowerRow>,
    pub alpha: f64,
    pub seed: u64,
    pub wall_clock_secs: f64,
    pub failures: Vec<String>,
}

impl PowerTable {
    pub fn cell(&self, label: &str, n: usize, kind: TestKind, est: Estimator) -> Option<&PowerEstimate> {
        let col = self.columns.iter().position(|&c| c == (kind, est))?;
        self.rows
            .iter()
            .find(|r| r.n == n && r.scenario.label() == label)?
            .cells[col]
            .as_ref()
    }
}

/// Runs the power study. MLE columns use Monte Carlo critical values under
/// `P(1)`; MME columns use the warp-speed bootstrap.
pub fn run_power_table(config: &StudyConfig) -> Result<PowerTable> {
    run_power_table_with_progress(config, |_, _, _| {})
}

/// As [`run_power_table`], calling `progress(done, total, label)` after each row.
pub fn run_power_table_with_progress(
    config: &StudyConfig,
    mut progress: impl FnMut(usize, usize, &str),
) -> Result<PowerTable> {
    config.validate()?;
    let total = config.sample_sizes.len() * config.scenarios.len();
    let start = Instant::now();
    let columns = config.columns();
    let mle_kinds: Vec<TestKind> = columns
        .iter()
        .filter(|c| c.1 == Estimator::Mle)
        .map(|c| c.0)
        .collect();
    let mme_kinds: Vec<TestKind> = columns
        .iter()
        .filter(|c| c.1 == Estimator::Mme)
        .map(|c| c.0)
        .collect();

    let mut table = match &config.critical_cache {
        Some(path) if path.exists() => CriticalValueTable::load(path)?,
        _ => CriticalValueTable::new(),
    };
    if !mle_kinds.is_empty() {
        let added = table.ensure(
            &mle_kinds,
            &config.sample_sizes,
            &[config.alpha],
            config.critical_reps,
            config.critical_seed(),
        )?;
        if let (Some(path), true) = (&config.critical_cache, added > 0) {
            table.save(path)?;
        }
    }

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &n in &config.sample_sizes {
        for scenario in &config.scenarios {
            let mut cells: Vec<Option<PowerEstimate>> = vec![None; columns.len()];
            let mut place = |result: Result<Vec<PowerEstimate>>, what: &str| match result {
                Ok(estimates) => {
                    for e in estimates {
                        if let Some(i) = columns.iter().position(|&c| c == (e.kind, e.estimator)) {
                            cells[i] = Some(e);
                        }
                    }
                }
                Err(e) => failures.push(format!("{} n={n} {what}: {e}", scenario.label())),
            };
            if !mle_kinds.is_empty() {
                let seed = config.cell_seed(scenario, n, Estimator::Mle);
                place(
                    fixed_critical_powers(&mle_kinds, scenario, n, config.alpha, config.power_reps, &table, seed),
                    "MLE",
                );
            }
            if !mme_kinds.is_empty() {
                let seed = config.cell_seed(scenario, n, Estimator::Mme);
                place(
                    warp_speed_powers(&mme_kinds, Estimator::Mme, scenario, n, config.alpha, config.warp_reps, seed),
                    "MME",
                );
            }
            rows.push(PowerRow { scenario: *scenario, n, cells });
            progress(rows.len(), total, &format!("{} n={n}", scenario.label()));
        }
    }
    Ok(PowerTable {
        columns,
        rows,
        alpha: config.alpha,
        seed: config.seed,
        wall_clock_secs: start.elapsed().as_secs_f64(),
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableFormat {
    Csv,
    Markdown,
}

fn percent(p: f64) -> String {
    format!("{}", (p * 100.0).round() as i64)
}

/// Renders a power table. Markdown cells are integer percentages; CSV cells
/// are proportions to four decimals.
pub fn render_table(table: &PowerTable, format: TableFormat) -> String {
    let headers: Vec<String> = table
        .columns
        .iter()
        .map(|(k, e)| if k.is_exponential() { k.key() } else { format!("{k} {e}") })
        .collect();
    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            let _ = writeln!(out, "| Distribution | n | {} |", headers.join(" | "));
            let _ = writeln!(out, "|---|---:|{}", "---:|".repeat(headers.len()));
            for row in &table.rows {
                let cells: Vec<String> = row
                    .cells
                    .iter()
                    .map(|c| c.as_ref().map_or_else(|| "-".to_string(), |e| percent(e.power)))
                    .collect();
                let _ = writeln!(out, "| {} | {} | {} |", row.scenario.label(), row.n, cells.join(" | "));
            }
        }
        TableFormat::Csv => {
            let cols: Vec<String> = headers.iter().map(|h| h.replace(' ', "_")).collect();
            let _ = writeln!(out, "distribution,n,{}", cols.join(","));
            for row in &table.rows {
                let cells: Vec<String> = row
                    .cells
                    .iter()
                    .map(|c| c.as_ref().map_or_else(String::new, |e| format!("{:.4}", e.power)))
                    .collect();
                let _ = writeln!(out, "{},{},{}", row.scenario.label(), row.n, cells.join(","));
            }
        }
    }
    out
}

/// One line per cell with standard error and replication metadata.
pub fn render_long_csv(table: &PowerTable) -> String {
    let mut out = String::from("distribution,n,test,estimator,alpha,power,std_error,replications,seed\n");
    for row in &table.rows {
        for (cell, (k, e)) in row.cells.iter().zip(&table.columns) {
            if let Some(c) = cell {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{:.6},{:.6},{},{}",
                    row.scenario.label(),
                    row.n,
                    k,
                    e,
                    c.alpha,
                    c.power,
                    c.std_error,
                    c.replications,
                    c.seed
                );
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tour {
    Pga,
    Liv,
}

impl Tour {
    pub fn name(self) -> &'static str {
        match self {
            Tour::Pga => "PGA",
            Tour::Liv => "LIV",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pga" => Some(Tour::Pga),
            "liv" => Some(Tour::Liv),
            _ => None,
        }
    }
}

/// 2022 season earnings (USD) of the 28 LIV Golf players above $3.5 million.
pub const LIV_EARNINGS: [f64; 28] = [
    36_071_517.0, 16_993_416.0, 15_124_499.0, 13_422_785.0, 12_765_714.0, 9_792_500.0,
    8_755_785.0, 8_297_000.0, 8_169_167.0, 8_033_500.0, 7_638_000.0, 6_755_314.0,
    5_741_000.0, 5_718_500.0, 5_109_000.0, 4_992_618.0, 4_843_367.0, 4_614_500.0,
    4_596_000.0, 4_535_000.0, 4_459_964.0, 4_434_314.0, 4_382_417.0, 3_877_583.0,
    3_700_000.0, 3_693_666.0, 3_599_100.0, 3_584_333.0,
];

/// 2022 season earnings (USD) of the 28 PGA Tour players above $3.5 million.
pub const PGA_EARNINGS: [f64; 28] = [
    14_046_909.0, 10_107_897.0, 9_405_081.0, 9_369_605.0, 8_654_566.0, 7_427_299.0,
    7_073_986.0, 7_012_672.0, 6_829_575.0, 6_520_597.0, 6_117_886.0, 5_776_298.0,
    5_567_974.0, 5_289_842.0, 5_248_220.0, 5_076_060.0, 5_018_443.0, 4_940_600.0,
    4_868_461.0, 4_837_271.0, 4_722_433.0, 4_310_047.0, 3_940_513.0, 3_876_590.0,
    3_757_425.0, 3_718_990.0, 3_623_137.0, 3_616_679.0,
];

/// Earnings were selected above this threshold, which also maps them onto
/// the support `x > 1`.
pub const GOLF_THRESHOLD: f64 = 3_500_000.0;

#[derive(Debug, Clone, PartialEq)]
pub struct GolfDataset {
    pub tour: Tour,
    pub earnings: Vec<f64>,
    pub divisor: f64,
}

impl GolfDataset {
    pub fn new(tour: Tour) -> Self {
        let earnings = match tour {
            Tour::Pga => PGA_EARNINGS.to_vec(),
            Tour::Liv => LIV_EARNINGS.to_vec(),
        };
        Self { tour, earnings, divisor: GOLF_THRESHOLD }
    }

    pub fn with_divisor(mut self, divisor: f64) -> Self {
        self.divisor = divisor;
        self
    }

    pub fn mean_earnings(&self) -> f64 {
        self.earnings.iter().sum::<f64>() / self.earnings.len() as f64
    }

    pub fn sample(&self) -> Result<Sample> {
        Sample::scaled(&self.earnings, self.divisor)
    }
}

/// Statistic and bootstrap p-value for each (estimator, test) pair. Tests
/// that are undefined for an estimator (or its refit) are skipped.
pub fn run_golf_application(
    dataset: &GolfDataset,
    estimators: &[Estimator],
    tests: &[TestKind],
    refit: Refit,
    b: usize,
    seed: u64,
    alphas: &[f64],
) -> Result<Vec<TestResult>> {
    let sample = dataset.sample()?;
    let mut out = Vec::new();
    for &est in estimators {
        let kinds: Vec<TestKind> = tests
            .iter()
            .copied()
            .filter(|k| k.supports(est) && k.supports(refit.estimator(est)))
            .collect();
        if kinds.is_empty() {
            continue;
        }
        let s = derive_seed(seed, &[label_hash(dataset.tour.name()), label_hash(est.name())]);
        out.extend(bootstrap_pvalues_with(&kinds, est, refit, &sample, b, s, alphas)?);
    }
    Ok(out)
}

/// Renders test results with one row per statistic and a statistic/p-value
/// column pair per estimator.
pub fn render_results(results: &[TestResult], format: TableFormat) -> String {
    let mut kinds: Vec<TestKind> = Vec::new();
    let mut ests: Vec<Estimator> = Vec::new();
    for r in results {
        if !kinds.contains(&r.kind) {
            kinds.push(r.kind);
        }
        if !ests.contains(&r.estimator) {
            ests.push(r.estimator);
        }
    }
    let find = |k: TestKind, e: Estimator| results.iter().find(|r| r.kind == k && r.estimator == e);
    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            let head: Vec<String> = ests.iter().map(|e| format!("{e} statistic | {e} p-value")).collect();
            let _ = writeln!(out, "| Test | {} |", head.join(" | "));
            let _ = writeln!(out, "|---|{}", "---:|".repeat(2 * ests.len()));
            for &k in &kinds {
                let cells: Vec<String> = ests
                    .iter()
                    .map(|&e| match find(k, e) {
                        Some(r) => format!(
                            "{:.3} | {}",
                            r.statistic,
                            r.p_value.map_or("-".into(), |p| format!("{p:.4}"))
                        ),
                        None => "- | -".into(),
                    })
                    .collect();
                let _ = writeln!(out, "| {k} | {} |", cells.join(" | "));
            }
        }
        TableFormat::Csv => {
            let _ = writeln!(out, "test,estimator,statistic,beta_hat,p_value");
            for r in results {
                let _ = writeln!(
                    out,
                    "{},{},{:?},{:?},{}",
                    r.kind,
                    r.estimator,
                    r.statistic,
                    r.beta_hat,
                    r.p_value.map_or(String::new(), |p| format!("{p:?}"))
                );
            }
        }
    }
    out
}

/// Everything needed to replay a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StudyManifest {
    pub crate_version: String,
    pub command: String,
    pub seed: u64,
    pub config: serde_json::Value,
    pub outputs: Vec<String>,
    pub wall_clock_secs: f64,
}

impl StudyManifest {
    pub fn new(command: &str, seed: u64, config: serde_json::Value) -> Self {
        Self {
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed,
            config,
            outputs: Vec::new(),
            wall_clock_secs: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}
