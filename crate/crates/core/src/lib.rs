//! Goodness-of-fit testing for the Pareto type I distribution.
//!
//! The null model throughout is `F(x) = 1 - x^(-beta)` on `x > 1` (scale fixed
//! at one). The crate provides:
//!
//! * [`distributions`]: the Pareto null, the shifted alternative families and
//!   mean-matched mixtures, all sampled from reproducible substreams.
//! * [`estimation`]: maximum likelihood and method of moments estimators for
//!   the shape, plus the pivotal power transform.
//! * [`statistics`]: the two memoryless-property statistics `MP1`/`MP2`, the
//!   EDF statistics, the Zhang likelihood-ratio statistic, the Mellin
//!   transform statistic and the exponentiality EDF suite on log data.
//! * [`inference`]: Monte Carlo critical values, parametric bootstrap
//!   p-values and warp-speed bootstrap power estimation.
//! * [`study`]: power tables, the golf earnings application and rendering.
//!
//! ```
//! use pareto_gof::prelude::*;
//!
//! let mut rng = RandomStream::new(7, 0);
//! let sample = pareto_sample(2.0, 25, &mut rng).unwrap();
//! let beta = estimate_mme(&sample).unwrap();
//! let mp2 = evaluate(TestKind::Mp2, Estimator::Mme, &sample).unwrap();
//! assert!(beta.beta > 1.0);
//! assert!(mp2.value >= 0.0);
//! ```

pub mod data;
pub mod distributions;
pub mod error;
pub mod estimation;
pub mod inference;
pub mod rng;
pub mod statistics;
pub mod study;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::distributions::{
        alt_cdf, alt_sample, mixture_sample, pareto_cdf, pareto_sample, AltFamily,
        AlternativeSpec, Contaminant, MixtureSpec, Sample, Scenario,
    };
    pub use crate::error::{Error, Result};
    pub use crate::estimation::{
        estimate, estimate_mle, estimate_mme, pivotal_transform, Estimator, ShapeEstimate,
    };
    pub use crate::inference::{
        bootstrap_pvalue, bootstrap_pvalues, null_critical_value, power_fixed_critical, warp_speed_power,
        CriticalValueTable, PowerEstimate, Refit, TestResult,
    };
    pub use crate::rng::RandomStream;
    pub use crate::statistics::{evaluate, StatisticValue, TestKind};
}
