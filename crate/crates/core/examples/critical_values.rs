//! Simulates MLE critical values, writes them to a cache file and reads them back.

use pareto_gof::inference::CriticalValueTable;
use pareto_gof::estimation::Estimator;
use pareto_gof::statistics::TestKind;

fn main() -> pareto_gof::Result<()> {
    let kinds = TestKind::PARETO;
    let table = CriticalValueTable::simulate(&kinds, &[20, 30], &[0.05, 0.10], 10_000, 2024)?;
    for n in [20, 30] {
        print!("n = {n}:");
        for k in kinds {
            let c = table.get(k, Estimator::Mle, n, 0.05).expect("simulated");
            print!("  {k} {:.4}", c.value);
        }
        println!();
    }

    let path = std::env::temp_dir().join("pareto-gof-critical-values.csv");
    table.save(&path)?;
    let back = CriticalValueTable::load(&path)?;
    assert_eq!(back, table);
    println!("{} entries round-tripped through {}", back.len(), path.display());
    Ok(())
}
