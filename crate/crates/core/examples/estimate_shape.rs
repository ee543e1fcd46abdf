//! MLE and MME of the Pareto shape, and the pivotal transform.

use pareto_gof::distributions::pareto_sample;
use pareto_gof::estimation::{estimate_mle, estimate_mme, pivotal_transform};
use pareto_gof::rng::RandomStream;

fn main() -> pareto_gof::Result<()> {
    let beta = 2.5;
    for n in [20, 100, 1000, 10_000] {
        let mut rng = RandomStream::new(1, n as u64);
        let s = pareto_sample(beta, n, &mut rng)?;
        let mle = estimate_mle(&s)?.beta;
        let mme = estimate_mme(&s)?.beta;
        println!("n = {n:>5}: MLE {mle:.4}  MME {mme:.4}  (true {beta})");
    }

    let mut rng = RandomStream::new(2, 0);
    let s = pareto_sample(4.0, 50, &mut rng)?;
    let y = pivotal_transform(&s)?;
    println!("MLE of the transformed sample: {:.12}", estimate_mle(&y)?.beta);
    Ok(())
}
