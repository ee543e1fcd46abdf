//! A small power table: MLE columns with fixed critical values, MME columns
//! with the warp-speed bootstrap.

use pareto_gof::distributions::AlternativeSpec;
use pareto_gof::study::{render_table, run_power_table_with_progress, StudyConfig, TableFormat};

fn main() -> pareto_gof::Result<()> {
    let config = StudyConfig {
        sample_sizes: vec![20],
        scenarios: ["pareto:2", "gamma:1.2", "weibull:1.5", "tp:3"]
            .iter()
            .map(|s| AlternativeSpec::parse(s).map(Into::into))
            .collect::<pareto_gof::Result<_>>()?,
        power_reps: 2000,
        warp_reps: 2000,
        ..StudyConfig::default()
    };
    let table = run_power_table_with_progress(&config, |done, total, label| {
        eprintln!("[{done}/{total}] {label}");
    })?;
    print!("{}", render_table(&table, TableFormat::Markdown));
    eprintln!("{:.1} s", table.wall_clock_secs);
    Ok(())
}
