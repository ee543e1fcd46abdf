use pareto_gof::distributions::{
    alt_cdf, alt_sample, mixture_sample, pareto_cdf, AltFamily, AlternativeSpec, Contaminant,
    MixtureSpec, Sample,
};
use pareto_gof::rng::RandomStream;
use statrs::distribution::{ContinuousCDF, Exp, Gamma, LogNormal, Normal, Weibull};

const N: usize = 100_000;

fn ecdf_distance(sample: &Sample, cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sample.len() as f64;
    sample
        .sorted()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

fn grid() -> Vec<AlternativeSpec> {
    let mut specs = Vec::new();
    for (family, thetas) in [
        (AltFamily::Pareto, &[0.7, 2.0, 10.0][..]),
        (AltFamily::Gamma, &[0.8, 1.0, 1.2]),
        (AltFamily::Weibull, &[0.8, 1.2, 1.5]),
        (AltFamily::LogNormal, &[1.0, 1.5, 2.5]),
        (AltFamily::HalfNormal, &[0.5, 1.0, 1.2]),
        (AltFamily::LinearFailureRate, &[0.2, 0.8, 1.0]),
        (AltFamily::BetaExponential, &[0.8, 1.0, 1.5]),
        (AltFamily::TiltedPareto, &[1.0, 2.0, 3.0]),
        (AltFamily::Dhillon, &[0.0, 0.4, 0.8]),
    ] {
        for &t in thetas {
            specs.push(AlternativeSpec::new(family, t).unwrap());
        }
    }
    specs
}

#[test]
fn every_family_matches_its_cdf() {
    for (i, spec) in grid().into_iter().enumerate() {
        let s = alt_sample(&spec, N, &mut RandomStream::new(2024, i as u64)).unwrap();
        let d = ecdf_distance(&s, |x| alt_cdf(&spec, x));
        assert!(d < 0.01, "{}: sup distance {d}", spec.label());
    }
}

#[test]
fn cdfs_agree_with_reference_implementations() {
    let xs = [1.05, 1.4, 2.0, 3.3, 7.0];
    let check = |spec: AlternativeSpec, reference: &dyn Fn(f64) -> f64| {
        for x in xs {
            let (a, b) = (alt_cdf(&spec, x), reference(x - 1.0));
            assert!((a - b).abs() < 1e-12, "{} at {x}: {a} vs {b}", spec.label());
        }
    };
    let g = Gamma::new(1.2, 1.0).unwrap();
    check(AlternativeSpec::new(AltFamily::Gamma, 1.2).unwrap(), &|y| g.cdf(y));
    let w = Weibull::new(1.5, 1.0).unwrap();
    check(AlternativeSpec::new(AltFamily::Weibull, 1.5).unwrap(), &|y| w.cdf(y));
    let ln = LogNormal::new(0.0, 2.5).unwrap();
    check(AlternativeSpec::new(AltFamily::LogNormal, 2.5).unwrap(), &|y| ln.cdf(y));
    let z = Normal::new(0.0, 1.2).unwrap();
    check(AlternativeSpec::new(AltFamily::HalfNormal, 1.2).unwrap(), &|y| 2.0 * z.cdf(y) - 1.0);
    check(AlternativeSpec::new(AltFamily::LinearFailureRate, 0.8).unwrap(), &|y| {
        1.0 - (-y - 0.4 * y * y).exp()
    });
    check(AlternativeSpec::new(AltFamily::BetaExponential, 1.5).unwrap(), &|y| {
        (1.0 - (-y).exp()).powf(1.5)
    });
    check(AlternativeSpec::new(AltFamily::TiltedPareto, 3.0).unwrap(), &|y| 1.0 - 4.0 / (y + 4.0));
    check(AlternativeSpec::new(AltFamily::Dhillon, 0.6).unwrap(), &|y| {
        1.0 - (-(1.0 + y).ln().powf(1.6)).exp()
    });
}

#[test]
fn dhillon_zero_is_unit_pareto() {
    let d0 = AlternativeSpec::new(AltFamily::Dhillon, 0.0).unwrap();
    for i in 1..200 {
        let x = 1.0 + i as f64 * 0.37;
        assert!((alt_cdf(&d0, x) - pareto_cdf(x, 1.0).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn unit_weibull_and_gamma_coincide() {
    let w = alt_sample(&AlternativeSpec::new(AltFamily::Weibull, 1.0).unwrap(), N, &mut RandomStream::new(8, 1)).unwrap();
    let g = alt_sample(&AlternativeSpec::new(AltFamily::Gamma, 1.0).unwrap(), N, &mut RandomStream::new(8, 2)).unwrap();
    let (a, b) = (w.sorted(), g.sorted());
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    assert!(d < 0.01, "two-sample distance {d}");
}

fn mixture_cdf(spec: &MixtureSpec, x: f64) -> f64 {
    let y = x - 1.0;
    let excess = spec.contaminant_mean - 1.0;
    let contaminant = match spec.contaminant {
        Contaminant::ShiftedExponential => Exp::new(1.0 / excess).unwrap().cdf(y),
        Contaminant::ShiftedHalfNormal => {
            2.0 * Normal::new(0.0, excess * (std::f64::consts::PI / 2.0).sqrt()).unwrap().cdf(y) - 1.0
        }
        Contaminant::ShiftedLogNormal => LogNormal::new(excess.ln() - 0.5, 1.0).unwrap().cdf(y),
    };
    spec.p * contaminant + (1.0 - spec.p) * pareto_cdf(x, 1.5).unwrap()
}

const CONTAMINANTS: [Contaminant; 3] = [
    Contaminant::ShiftedExponential,
    Contaminant::ShiftedHalfNormal,
    Contaminant::ShiftedLogNormal,
];

#[test]
fn mixtures_match_their_cdf() {
    for (i, c) in CONTAMINANTS.into_iter().enumerate() {
        for p in [0.0, 0.3, 0.9, 1.0] {
            let spec = MixtureSpec::with_default_mean(p, c).unwrap();
            let s = mixture_sample(&spec, N, &mut RandomStream::new(77, i as u64 * 10 + (p * 10.0) as u64)).unwrap();
            let d = ecdf_distance(&s, |x| mixture_cdf(&spec, x));
            assert!(d < 0.01, "{}: {d}", spec.label());
        }
    }
}

#[test]
fn contaminant_means_are_three() {
    for (i, c) in CONTAMINANTS.into_iter().enumerate() {
        let spec = MixtureSpec::with_default_mean(1.0, c).unwrap();
        let s = mixture_sample(&spec, N, &mut RandomStream::new(5, i as u64)).unwrap();
        assert!((s.mean() - 3.0).abs() < 0.05, "{}: {}", spec.label(), s.mean());
    }
}

#[test]
fn half_mixtures_have_mean_three() {
    // the Pareto(1.5) half has infinite variance, so pool ten batches
    for (i, c) in CONTAMINANTS.into_iter().enumerate() {
        let spec = MixtureSpec::with_default_mean(0.5, c).unwrap();
        let mean = (0..10)
            .map(|b| mixture_sample(&spec, N, &mut RandomStream::new(6, 100 * i as u64 + b)).unwrap().mean())
            .sum::<f64>()
            / 10.0;
        assert!((mean - 3.0).abs() < 0.05, "{}: {mean}", spec.label());
    }
}

#[test]
fn equal_inputs_give_identical_samples() {
    let spec = AlternativeSpec::new(AltFamily::Gamma, 0.8).unwrap();
    let a = alt_sample(&spec, 500, &mut RandomStream::new(1, 2)).unwrap();
    let b = alt_sample(&spec, 500, &mut RandomStream::new(1, 2)).unwrap();
    let c = alt_sample(&spec, 500, &mut RandomStream::new(1, 3)).unwrap();
    assert_eq!(a.values(), b.values());
    assert_ne!(a.values(), c.values());
}
