//! Power against mean-matched Pareto mixtures for each contaminant.

use pareto_gof::distributions::{Contaminant, MixtureSpec, Scenario};
use pareto_gof::estimation::Estimator;
use pareto_gof::inference::warp_speed_powers;
use pareto_gof::statistics::TestKind;

fn main() -> pareto_gof::Result<()> {
    let kinds = [TestKind::Mp1, TestKind::Mp2, TestKind::G];
    println!("{:<26} {:>6} {:>6} {:>6}", "MME, n = 30", "MP1", "MP2", "G");
    for c in [
        Contaminant::ShiftedExponential,
        Contaminant::ShiftedHalfNormal,
        Contaminant::ShiftedLogNormal,
    ] {
        for p in [0.1, 0.5, 0.9] {
            let scenario = Scenario::from(MixtureSpec::with_default_mean(p, c)?);
            let powers = warp_speed_powers(&kinds, Estimator::Mme, &scenario, 30, 0.05, 4000, 5)?;
            print!("{:<26}", scenario.label());
            for e in powers {
                print!(" {:>6.3}", e.power);
            }
            println!();
        }
    }
    Ok(())
}
