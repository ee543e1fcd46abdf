//! Tests whether 2022 PGA and LIV golf earnings above $3.5 million are Pareto.

use pareto_gof::estimation::Estimator;
use pareto_gof::inference::Refit;
use pareto_gof::statistics::TestKind;
use pareto_gof::study::{render_results, run_golf_application, GolfDataset, TableFormat, Tour};

fn main() -> pareto_gof::Result<()> {
    for tour in [Tour::Pga, Tour::Liv] {
        let data = GolfDataset::new(tour);
        println!("{}: n = {}, mean earnings ${:.0}", tour.name(), data.earnings.len(), data.mean_earnings());
        let results = run_golf_application(
            &data,
            &Estimator::ALL,
            &TestKind::PARETO,
            Refit::Moments,
            10_000,
            1,
            &[0.05, 0.10],
        )?;
        println!("{}", render_results(&results, TableFormat::Markdown));
    }
    Ok(())
}
