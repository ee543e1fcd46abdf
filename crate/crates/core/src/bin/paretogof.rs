use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use pareto_gof::data::read_observations;
use pareto_gof::distributions::{AlternativeSpec, Contaminant, MixtureSpec, Sample, Scenario};
use pareto_gof::estimation::{estimate, Estimator};
use pareto_gof::inference::{bootstrap_pvalues_with, pivotal_pvalues, CriticalValueTable, Refit, TestResult};
use pareto_gof::statistics::TestKind;
use pareto_gof::study::{
    fixed_alternative_grid, mixture_grid, render_long_csv, render_results, render_table,
    run_golf_application, run_power_table_with_progress, GolfDataset, StudyConfig, StudyManifest,
    TableFormat, Tour,
};
use pareto_gof::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "paretogof", version, about = "Goodness-of-fit tests for the Pareto type I distribution")]
struct Cli {
    /// Worker threads for simulations (default: all cores).
    #[arg(long, global = true, env = "PARETOGOF_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test whether a data file follows a Pareto type I law.
    Test(TestArgs),
    /// Simulate MLE critical values and write them to a cache file.
    CriticalValues(CriticalArgs),
    /// Run a power study and write the tables.
    Power(PowerArgs),
    /// Test the 2022 PGA and LIV golf earnings.
    Golf(GolfArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Route {
    /// Parametric bootstrap from the fitted Pareto.
    Bootstrap,
    /// Simulated shape-free null (MLE only).
    Pivotal,
}

#[derive(Debug, Args)]
struct TestArgs {
    /// One observation per line, or a single-column CSV with a header.
    input: PathBuf,
    /// Divide every observation by this value first.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long, value_delimiter = ',', default_value = "mme")]
    estimator: Vec<Estimator>,
    #[arg(long, value_delimiter = ',', default_value = "KS,CV,AD,ZA,G,MP1,MP2")]
    tests: Vec<TestKind>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Bootstrap (or null simulation) replications.
    #[arg(long, default_value_t = 10_000)]
    b: usize,
    #[arg(long, value_enum, default_value_t = Route::Bootstrap)]
    route: Route,
    /// Estimator applied to bootstrap samples: `same` or `mme`.
    #[arg(long, default_value = "same")]
    refit: Refit,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Also write a JSON report here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CriticalArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "KS,CV,AD,ZA,G,MP1,MP2,ExpKS,ExpCV,ExpAD,ExpZA")]
    tests: Vec<TestKind>,
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.05,0.1")]
    alpha: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    reps: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Cache file; existing entries are kept and missing ones added.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct PowerArgs {
    /// TOML file with study settings; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Alternatives as `family:theta`, e.g. `gamma:1.2,pareto:2`.
    #[arg(long, value_delimiter = ',')]
    alternatives: Option<Vec<String>>,
    /// Mixtures as `contaminant:p[:mean]`, e.g. `lognormal:0.9`.
    #[arg(long, value_delimiter = ',')]
    mixtures: Option<Vec<String>>,
    /// Built-in grids: `fixed`, `exponential`, `halfnormal`, `lognormal`.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    tests: Option<Vec<TestKind>>,
    #[arg(long, value_delimiter = ',')]
    estimators: Option<Vec<Estimator>>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Fraction of the full replication counts (1e5 / 1e4 / 5e4).
    #[arg(long)]
    scale_factor: Option<f64>,
    #[arg(long)]
    critical_reps: Option<usize>,
    #[arg(long)]
    power_reps: Option<usize>,
    #[arg(long)]
    warp_reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    critical_cache: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// File stem of the written tables.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerFile {
    n: Option<Vec<usize>>,
    alternatives: Option<Vec<String>>,
    mixtures: Option<Vec<String>>,
    grid: Option<Vec<String>>,
    tests: Option<Vec<String>>,
    estimators: Option<Vec<String>>,
    alpha: Option<f64>,
    scale_factor: Option<f64>,
    critical_reps: Option<usize>,
    power_reps: Option<usize>,
    warp_reps: Option<usize>,
    seed: Option<u64>,
    critical_cache: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    name: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TourChoice {
    Pga,
    Liv,
    Both,
}

#[derive(Debug, Args)]
struct GolfArgs {
    #[arg(long, value_enum, default_value_t = TourChoice::Both)]
    tour: TourChoice,
    #[arg(long, value_delimiter = ',', default_value = "mme,mle")]
    estimator: Vec<Estimator>,
    #[arg(long, value_delimiter = ',', default_value = "KS,CV,AD,ZA,G,MP1,MP2")]
    tests: Vec<TestKind>,
    #[arg(long, default_value_t = 10_000)]
    b: usize,
    /// Estimator applied to bootstrap samples: `same` or `mme`.
    #[arg(long, default_value = "mme")]
    refit: Refit,
    #[arg(long, default_value_t = 3_500_000.0)]
    divisor: f64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
}

const ALPHAS: [f64; 3] = [0.01, 0.05, 0.10];

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    let outcome = match cli.command {
        Command::Test(args) => cmd_test(args),
        Command::CriticalValues(args) => cmd_critical_values(args),
        Command::Power(args) => cmd_power(args),
        Command::Golf(args) => cmd_golf(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 1,
        Error::Argument(_) | Error::Config(_) | Error::Unsupported(_) => 2,
        Error::Parse { .. } => 3,
        Error::Domain(_) => 4,
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    let seed = seed.unwrap_or_else(rand::random);
    eprintln!("seed: {seed}");
    seed
}

fn table_format(format: Format) -> TableFormat {
    match format {
        Format::Csv => TableFormat::Csv,
        _ => TableFormat::Markdown,
    }
}

fn cmd_test(args: TestArgs) -> Result<()> {
    let raw = read_observations(&args.input)?;
    let sample = Sample::scaled(&raw, args.scale)?;
    let seed = resolve_seed(args.seed);
    let mut alphas = ALPHAS.to_vec();
    if !alphas.iter().any(|a| (a - args.alpha).abs() < 1e-12) {
        alphas.push(args.alpha);
    }
    let mut results = Vec::new();
    for &est in &args.estimator {
        let mut r = match args.route {
            Route::Bootstrap => bootstrap_pvalues_with(&args.tests, est, args.refit, &sample, args.b, seed, &alphas)?,
            Route::Pivotal if est == Estimator::Mle => pivotal_pvalues(&args.tests, &sample, args.b, seed, &alphas)?,
            Route::Pivotal => {
                return Err(Error::Unsupported("the pivotal route needs the MLE".into()));
            }
        };
        results.append(&mut r);
    }

    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&results).expect("results serialize")),
        f => {
            println!("n = {}", sample.len());
            for &est in &args.estimator {
                println!("{est} shape estimate = {:.4}", estimate(est, &sample)?.beta);
            }
            print!("{}", decision_table(&results, args.alpha, table_format(f)));
        }
    }
    if let Some(path) = &args.output {
        let report = serde_json::json!({
            "input": args.input,
            "scale": args.scale,
            "seed": seed,
            "replications": args.b,
            "alpha": args.alpha,
            "results": results,
        });
        write_file(path, &serde_json::to_string_pretty(&report).expect("report serializes"))?;
    }
    Ok(())
}

fn decision_table(results: &[TestResult], alpha: f64, format: TableFormat) -> String {
    let mut out = String::new();
    let decision = |r: &TestResult| match r.rejects(alpha) {
        Some(true) => "reject",
        Some(false) => "accept",
        None => "-",
    };
    let p = |r: &TestResult| r.p_value.map_or("-".to_string(), |p| format!("{p:.4}"));
    match format {
        TableFormat::Markdown => {
            let _ = writeln!(out, "| Test | Estimator | Statistic | p-value | Decision (alpha = {alpha}) |");
            let _ = writeln!(out, "|---|---|---:|---:|---|");
            for r in results {
                let _ = writeln!(out, "| {} | {} | {:.4} | {} | {} |", r.kind, r.estimator, r.statistic, p(r), decision(r));
            }
        }
        TableFormat::Csv => {
            let _ = writeln!(out, "test,estimator,statistic,p_value,decision");
            for r in results {
                let _ = writeln!(out, "{},{},{:?},{},{}", r.kind, r.estimator, r.statistic, p(r), decision(r));
            }
        }
    }
    out
}

fn cmd_critical_values(args: CriticalArgs) -> Result<()> {
    let seed = resolve_seed(args.seed);
    let mut table = if args.output.exists() {
        CriticalValueTable::load(&args.output)?
    } else {
        CriticalValueTable::new()
    };
    let added = table.ensure(&args.tests, &args.n, &args.alpha, args.reps, seed)?;
    table.save(&args.output)?;
    eprintln!("{added} entries simulated, {} in {}", table.len(), args.output.display());
    print!("{}", table.to_text());
    Ok(())
}

fn parse_list<T>(items: &[String], parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    items.iter().map(|s| parse(s)).collect()
}

fn grid(name: &str) -> Result<Vec<Scenario>> {
    if name.eq_ignore_ascii_case("fixed") {
        return Ok(fixed_alternative_grid());
    }
    Contaminant::parse(name)
        .map(mixture_grid)
        .ok_or_else(|| Error::Config(format!("unknown grid `{name}` (fixed|exponential|halfnormal|lognormal)")))
}

fn cmd_power(args: PowerArgs) -> Result<()> {
    let file: PowerFile = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        }
        None => PowerFile::default(),
    };

    let scale_factor = args.scale_factor.or(file.scale_factor).unwrap_or(0.1);
    let mut config = StudyConfig::full_scale().scaled(scale_factor)?;
    if let Some(n) = args.n.or(file.n) {
        config.sample_sizes = n;
    }
    if let Some(alpha) = args.alpha.or(file.alpha) {
        config.alpha = alpha;
    }
    if let Some(tests) = args.tests {
        config.tests = tests;
    } else if let Some(tests) = &file.tests {
        config.tests = parse_list(tests, |s| s.parse())?;
    }
    if let Some(est) = args.estimators {
        config.estimators = est;
    } else if let Some(est) = &file.estimators {
        config.estimators = parse_list(est, |s| s.parse())?;
    }
    config.critical_reps = args.critical_reps.or(file.critical_reps).unwrap_or(config.critical_reps);
    config.power_reps = args.power_reps.or(file.power_reps).unwrap_or(config.power_reps);
    config.warp_reps = args.warp_reps.or(file.warp_reps).unwrap_or(config.warp_reps);
    config.critical_cache = args.critical_cache.or(file.critical_cache);

    let alternatives = args.alternatives.or(file.alternatives);
    let mixtures = args.mixtures.or(file.mixtures);
    let grids = args.grid.or(file.grid);
    if alternatives.is_some() || mixtures.is_some() || grids.is_some() {
        let mut scenarios = Vec::new();
        for g in grids.unwrap_or_default() {
            scenarios.extend(grid(&g)?);
        }
        for a in parse_list(&alternatives.unwrap_or_default(), AlternativeSpec::parse)? {
            scenarios.push(a.into());
        }
        for m in parse_list(&mixtures.unwrap_or_default(), MixtureSpec::parse)? {
            scenarios.push(m.into());
        }
        config.scenarios = scenarios;
    }
    config.seed = resolve_seed(args.seed.or(file.seed));
    config.validate()?;

    let out_dir = args.out_dir.or(file.out_dir).unwrap_or_else(|| PathBuf::from("power-out"));
    let name = args.name.or(file.name).unwrap_or_else(|| "power".into());
    eprintln!(
        "{} scenarios x {} sample sizes, reps: critical {} / power {} / warp-speed {}",
        config.scenarios.len(),
        config.sample_sizes.len(),
        config.critical_reps,
        config.power_reps,
        config.warp_reps
    );
    let table = run_power_table_with_progress(&config, |done, total, label| {
        eprintln!("[{done}/{total}] {label}");
    })?;
    for f in &table.failures {
        eprintln!("warning: {f}");
    }

    let mut manifest = StudyManifest::new(
        "power",
        config.seed,
        serde_json::to_value(&config).expect("config serializes"),
    );
    for (file_name, body) in [
        (format!("{name}.csv"), render_table(&table, TableFormat::Csv)),
        (format!("{name}.md"), render_table(&table, TableFormat::Markdown)),
        (format!("{name}_long.csv"), render_long_csv(&table)),
    ] {
        write_file(&out_dir.join(&file_name), &body)?;
        manifest.outputs.push(file_name);
    }
    manifest.wall_clock_secs = table.wall_clock_secs;
    write_file(&out_dir.join("manifest.json"), &manifest.to_json())?;

    print!("{}", render_table(&table, TableFormat::Markdown));
    eprintln!("wall clock: {:.1} s, tables in {}", table.wall_clock_secs, out_dir.display());
    Ok(())
}

fn group_thousands(x: f64) -> String {
    let digits = format!("{}", x.round() as u64);
    let mut out = String::new();
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(' ');
        }
        out.push(c);
    }
    out
}

fn cmd_golf(args: GolfArgs) -> Result<()> {
    let seed = resolve_seed(args.seed);
    let tours = match args.tour {
        TourChoice::Pga => vec![Tour::Pga],
        TourChoice::Liv => vec![Tour::Liv],
        TourChoice::Both => vec![Tour::Liv, Tour::Pga],
    };
    let start = Instant::now();
    for tour in tours {
        let data = GolfDataset::new(tour).with_divisor(args.divisor);
        let sample = data.sample()?;
        println!("## {} 2022 earnings above $3.5 million (n = {})\n", tour.name(), data.earnings.len());
        println!("| Rank | Earnings (USD) |");
        println!("|---:|---:|");
        for (i, e) in data.earnings.iter().enumerate() {
            println!("| {} | {} |", i + 1, group_thousands(*e));
        }
        println!("\naverage earnings: ${}", group_thousands(data.mean_earnings()));
        for &est in &args.estimator {
            println!("{est} shape estimate: {:.4}", estimate(est, &sample)?.beta);
        }
        let results = run_golf_application(&data, &args.estimator, &args.tests, args.refit, args.b, seed, &ALPHAS)?;
        let body = match args.format {
            Format::Json => serde_json::to_string_pretty(&results).expect("results serialize") + "\n",
            f => render_results(&results, table_format(f)),
        };
        println!("\n{body}");
        for alpha in ALPHAS {
            let rejected: Vec<String> = results
                .iter()
                .filter(|r| r.rejects(alpha) == Some(true))
                .map(|r| format!("{} {}", r.kind, r.estimator))
                .collect();
            let list = if rejected.is_empty() { "none".to_string() } else { rejected.join(", ") };
            println!("rejected at {alpha}: {list}");
        }
        println!();
    }
    eprintln!("wall clock: {:.1} s", start.elapsed().as_secs_f64());
    Ok(())
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, body)?;
    Ok(())
}
