//! Size and power of the Mellin statistic across tuning values.

use pareto_gof::distributions::{AlternativeSpec, Scenario};
use pareto_gof::estimation::Estimator;
use pareto_gof::inference::warp_speed_powers;
use pareto_gof::statistics::TestKind;

fn main() -> pareto_gof::Result<()> {
    let kinds: Vec<TestKind> = [0.5, 1.0, 2.0, 4.0].iter().map(|&a| TestKind::MellinG { a }).collect();
    print!("{:<10}", "MME n=20");
    for k in &kinds {
        print!(" {:>9}", k.key());
    }
    println!();
    for text in ["pareto:2", "gamma:1", "gamma:1.2", "tp:3"] {
        let scenario = Scenario::from(AlternativeSpec::parse(text)?);
        let powers = warp_speed_powers(&kinds, Estimator::Mme, &scenario, 20, 0.05, 4000, 9)?;
        print!("{:<10}", scenario.label());
        for e in powers {
            print!(" {:>9.3}", e.power);
        }
        println!();
    }
    Ok(())
}
