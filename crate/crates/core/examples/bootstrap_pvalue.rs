//! Tests a gamma sample for the Pareto law with bootstrap and pivotal p-values.

use pareto_gof::distributions::{alt_sample, AltFamily, AlternativeSpec};
use pareto_gof::estimation::Estimator;
use pareto_gof::inference::{bootstrap_pvalues, pivotal_pvalues};
use pareto_gof::rng::RandomStream;
use pareto_gof::statistics::TestKind;

fn main() -> pareto_gof::Result<()> {
    let spec = AlternativeSpec::new(AltFamily::Gamma, 1.0)?;
    let mut rng = RandomStream::new(11, 0);
    let sample = alt_sample(&spec, 40, &mut rng)?;
    let kinds = [TestKind::Mp2, TestKind::G, TestKind::Ad];

    for r in bootstrap_pvalues(&kinds, Estimator::Mme, &sample, 5000, 7, &[0.05])? {
        println!("bootstrap {} {}: T = {:.4}, p = {:.4}", r.kind, r.estimator, r.statistic, r.p_value.unwrap());
    }
    for r in pivotal_pvalues(&kinds, &sample, 10_000, 7, &[0.05])? {
        println!(
            "pivotal   {} MLE: T = {:.4}, p = {:.4}, critical value {:.4}",
            r.kind,
            r.statistic,
            r.p_value.unwrap(),
            r.critical_value.unwrap()
        );
    }
    Ok(())
}
