//! Reads observations from a file (or a built-in sample), scales them and
//! reports the recommended MME tests.

use std::path::PathBuf;

use pareto_gof::data::{parse_observations, read_observations};
use pareto_gof::distributions::Sample;
use pareto_gof::estimation::Estimator;
use pareto_gof::inference::bootstrap_pvalues;
use pareto_gof::statistics::TestKind;

const DEMO: &str = "income\n52000\n61000\n48000\n150000\n73000\n45500\n98000\n56000\n41000\n230000\n";

fn main() -> pareto_gof::Result<()> {
    let raw = match std::env::args().nth(1) {
        Some(path) => read_observations(&PathBuf::from(path))?,
        None => parse_observations(DEMO, "demo".as_ref())?,
    };
    let threshold = 40_000.0;
    let sample = Sample::scaled(&raw, threshold)?;
    let results = bootstrap_pvalues(&[TestKind::Mp2, TestKind::G], Estimator::Mme, &sample, 5000, 3, &[0.05])?;
    for r in results {
        let verdict = if r.rejects(0.05) == Some(true) { "reject" } else { "do not reject" };
        println!("{}: T = {:.4}, p = {:.4} -> {verdict} at 5%", r.kind, r.statistic, r.p_value.unwrap());
    }
    Ok(())
}
