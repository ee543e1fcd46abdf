//! Every test statistic on one simulated sample, under both estimators.

use pareto_gof::distributions::pareto_sample;
use pareto_gof::estimation::Estimator;
use pareto_gof::rng::RandomStream;
use pareto_gof::statistics::{Prepared, TestKind};

fn main() -> pareto_gof::Result<()> {
    let mut rng = RandomStream::new(3, 0);
    let sample = pareto_sample(2.0, 30, &mut rng)?;
    for est in Estimator::ALL {
        let prep = Prepared::new(&sample, est)?;
        println!("{est}: beta = {:.4}", prep.estimate());
        for kind in TestKind::all().into_iter().filter(|k| k.supports(est)) {
            let v = prep.eval(kind);
            println!("  {:<6} {:.6}", kind.key(), v.value);
        }
    }
    let g3 = TestKind::MellinG { a: 3.0 };
    let v = Prepared::new(&sample, Estimator::Mme)?.eval(g3);
    println!("{g3} with the MME: {:.6}", v.value);
    Ok(())
}
