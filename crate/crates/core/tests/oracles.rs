//! Closed-form statistics against independent evaluations of their defining
//! integrals and double sums.

use pareto_gof::distributions::{alt_sample, AltFamily, AlternativeSpec, Sample};
use pareto_gof::estimation::{estimate, power_transform, Estimator};
use pareto_gof::rng::RandomStream;
use pareto_gof::statistics::{ad, cv, ks, mellin_g, mellin_weights, mp1, mp2, za};
use rand::Rng;

const GL_NODES: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

/// Five-point Gauss-Legendre on `[a, b]`; exact for polynomials of degree 9.
fn gauss5(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
    GL_NODES.iter().zip(GL_WEIGHTS).map(|(x, w)| w * f(m + h * x)).sum::<f64>() * h
}

/// Gauss-Legendre over each piece between sorted breakpoints in `[a, b]`.
fn piecewise(a: f64, b: f64, mut breaks: Vec<f64>, f: impl Fn(f64) -> f64) -> f64 {
    breaks.retain(|&x| x > a && x < b);
    breaks.sort_by(f64::total_cmp);
    let mut edges = vec![a];
    edges.extend(breaks);
    edges.push(b);
    edges.windows(2).map(|w| gauss5(w[0], w[1], &f)).sum()
}

#[allow(clippy::too_many_arguments)]
fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, eps, 40)
}

fn survival_count(x: &[f64], t: f64) -> f64 {
    x.iter().filter(|&&v| v > t).count() as f64 / x.len() as f64
}

/// `int_1^inf (S_n(t^2) - t^(-2 beta))^2 dF(t)` with `s = F(t)`.
fn mp1_oracle(x: &[f64], beta: f64) -> f64 {
    let breaks = x.iter().map(|v| 1.0 - v.powf(-beta / 2.0)).collect();
    piecewise(0.0, 1.0, breaks, |s| {
        let t2 = (1.0 - s).powf(-2.0 / beta);
        let d = survival_count(x, t2) - (1.0 - s).powi(2);
        d * d
    })
}

/// `int int (S_n(st) - (st)^(-beta))^2 dF(s) dF(t)` with `u = F(s)`, `w = F(t)`.
fn mp2_oracle(x: &[f64], beta: f64) -> f64 {
    let inner = |u: f64| {
        let s = (1.0 - u).powf(-1.0 / beta);
        let breaks = x.iter().filter(|&&v| v > s).map(|v| 1.0 - (s / v).powf(beta)).collect();
        piecewise(0.0, 1.0, breaks, |w| {
            let t = (1.0 - w).powf(-1.0 / beta);
            let d = survival_count(x, s * t) - (1.0 - u) * (1.0 - w);
            d * d
        })
    };
    let mut kinks: Vec<f64> = x.iter().map(|v| 1.0 - v.powf(-beta)).collect();
    kinks.push(0.0);
    kinks.push(1.0);
    kinks.sort_by(f64::total_cmp);
    kinks.dedup();
    kinks.windows(2).map(|w| adaptive_simpson(inner, w[0], w[1], 1e-11)).sum()
}

fn mp1_double_sum(x: &[f64], beta: f64) -> f64 {
    let n = x.len() as f64;
    let single: f64 = x.iter().map(|v| v.powf(-1.5 * beta)).sum();
    let mut double = 0.0;
    for &a in x {
        for &b in x {
            double += a.min(b).powf(-beta / 2.0);
        }
    }
    2.0 / (3.0 * n) * single - double / (n * n) + 8.0 / 15.0
}

fn mp2_double_sum(x: &[f64], beta: f64) -> f64 {
    let n = x.len() as f64;
    let (mut d0, mut d1) = (0.0, 0.0);
    for &a in x {
        for &b in x {
            let m = a.min(b);
            d0 += m.powf(-beta);
            d1 += m.powf(-beta) * m.ln();
        }
    }
    let tail: f64 = x
        .iter()
        .map(|v| (1.0 - v.powf(-2.0 * beta)) / (2.0 * beta) - v.powf(-2.0 * beta) * v.ln())
        .sum();
    10.0 / 9.0 - d0 / (n * n) - beta * d1 / (n * n) - beta / n * tail
}

/// `int_0^inf (t-1)^m x^(-t) e^(-a t) dt` by quadrature.
fn mellin_integral(m: i32, x: f64, a: f64) -> f64 {
    let rate = a + x.ln();
    let upper = 60.0 / rate + 4.0;
    adaptive_simpson(|t| (t - 1.0).powi(m) * (-rate * t).exp(), 0.0, upper, 1e-14)
}

fn mellin_double_sum(x: &[f64], beta: f64, a: f64) -> f64 {
    let n = x.len() as f64;
    let i = |m: usize, v: f64| mellin_weights(v.ln(), a)[m];
    let (mut p0, mut p1, mut p2) = (0.0, 0.0, 0.0);
    for &xj in x {
        for &xk in x {
            p0 += i(0, xj * xk);
            p1 += i(1, xj * xk);
            p2 += i(2, xj * xk);
        }
    }
    let s0: f64 = x.iter().map(|&v| i(0, v)).sum();
    let s1: f64 = x.iter().map(|&v| i(1, v)).sum();
    let b1 = beta + 1.0;
    (b1 * b1 * p0 + p2 + 2.0 * b1 * p1) / n + beta * (n * beta * i(0, 1.0) - 2.0 * b1 * s0 - 2.0 * s1)
}

/// 100 reproducible (sample, estimate) pairs with `n <= 30` from assorted
/// families and both estimators.
fn cases() -> Vec<(Sample, f64)> {
    let families = [
        AlternativeSpec::pareto(1.0).unwrap(),
        AlternativeSpec::pareto(3.0).unwrap(),
        AlternativeSpec::new(AltFamily::Gamma, 1.2).unwrap(),
        AlternativeSpec::new(AltFamily::LogNormal, 1.5).unwrap(),
        AlternativeSpec::new(AltFamily::TiltedPareto, 2.0).unwrap(),
    ];
    let mut picker = RandomStream::new(99, 0);
    let mut out = Vec::new();
    let mut stream = 1;
    while out.len() < 100 {
        let n = picker.random_range(1..=30);
        let spec = families[picker.random_range(0..families.len())];
        let est = Estimator::ALL[picker.random_range(0..2)];
        stream += 1;
        let s = alt_sample(&spec, n, &mut RandomStream::new(99, stream)).unwrap();
        if let Ok(e) = estimate(est, &s) {
            out.push((s, e.beta));
        }
    }
    out
}

#[test]
fn mp1_matches_quadrature() {
    for (s, beta) in cases() {
        let closed = mp1(&s, beta).unwrap().value;
        let oracle = mp1_oracle(s.values(), beta);
        assert!((closed - oracle).abs() < 1e-8, "n={} beta={beta}: {closed} vs {oracle}", s.len());
    }
}

#[test]
fn mp2_matches_quadrature() {
    for (s, beta) in cases() {
        let closed = mp2(&s, beta).unwrap().value;
        let oracle = mp2_oracle(s.values(), beta);
        assert!((closed - oracle).abs() < 1e-6, "n={} beta={beta}: {closed} vs {oracle}", s.len());
    }
}

#[test]
fn single_sums_match_double_sums() {
    for (s, beta) in cases() {
        let x = s.values();
        let a = mp1(&s, beta).unwrap().value;
        let b = mp2(&s, beta).unwrap().value;
        assert!((a - mp1_double_sum(x, beta)).abs() < 1e-10);
        assert!((b - mp2_double_sum(x, beta)).abs() < 1e-10);
    }
}

#[test]
fn mellin_weights_match_quadrature() {
    for a in [0.5, 1.0, 2.0] {
        for x in [1.0, 1.3, 2.0, 7.5, 40.0] {
            let w = mellin_weights(f64::ln(x), a);
            for m in 0..3 {
                let q = mellin_integral(m, x, a);
                assert!((w[m as usize] - q).abs() < 1e-10, "m={m} x={x} a={a}: {} vs {q}", w[m as usize]);
            }
        }
    }
}

#[test]
fn mellin_matches_naive_double_sum() {
    for (s, beta) in cases().into_iter().take(40) {
        for a in [1.0, 2.0] {
            let closed = mellin_g(&s, beta, a).unwrap().value;
            let naive = mellin_double_sum(s.values(), beta, a);
            assert!((closed - naive).abs() < 1e-10 * naive.abs().max(1.0), "{closed} vs {naive}");
        }
    }
}

#[test]
fn pivotal_identity() {
    for (s, _) in cases() {
        let Ok(mle) = estimate(Estimator::Mle, &s) else { continue };
        let y = power_transform(&s, mle.beta).unwrap();
        type Stat = fn(&Sample, f64) -> pareto_gof::Result<pareto_gof::statistics::StatisticValue>;
        let stats: [(&str, Stat); 6] = [("MP1", mp1), ("MP2", mp2), ("KS", ks), ("CV", cv), ("AD", ad), ("ZA", za)];
        for (name, f) in stats {
            let direct = f(&s, mle.beta).unwrap().value;
            let pivot = f(&y, 1.0).unwrap().value;
            assert!((direct - pivot).abs() < 1e-10, "{name}: {direct} vs {pivot}");
        }
    }
}

#[test]
fn endpoint_limits_are_exact() {
    let s = Sample::new(vec![1.0 + 1e-14; 5]).unwrap();
    assert!((mp1(&s, 1.0).unwrap().value - mp1_oracle(s.values(), 1.0)).abs() < 1e-8);
    let big = pareto_gof::distributions::pareto_sample(0.5, 20, &mut RandomStream::new(5, 5)).unwrap();
    assert!((mp2(&big, 0.5).unwrap().value - mp2_oracle(big.values(), 0.5)).abs() < 1e-6);
}

/// Worst absolute deviation of each closed form from its oracle, with the
/// tolerance it is held to.
pub fn max_deviations() -> Vec<(&'static str, f64, f64)> {
    let mut worst = [0.0f64; 6];
    for a in [0.5, 1.0, 2.0] {
        for x in [1.0, 1.3, 2.0, 7.5, 40.0] {
            let w = mellin_weights(f64::ln(x), a);
            for m in 0..3 {
                worst[4] = worst[4].max((w[m as usize] - mellin_integral(m, x, a)).abs());
            }
        }
    }
    for (s, beta) in cases() {
        let naive = mellin_double_sum(s.values(), beta, 2.0);
        let rel = (mellin_g(&s, beta, 2.0).unwrap().value - naive).abs() / naive.abs().max(1.0);
        worst[5] = worst[5].max(rel);
    }
    for (s, beta) in cases() {
        let x = s.values();
        let a = mp1(&s, beta).unwrap().value;
        let b = mp2(&s, beta).unwrap().value;
        worst[0] = worst[0].max((a - mp1_oracle(x, beta)).abs());
        worst[1] = worst[1].max((b - mp2_oracle(x, beta)).abs());
        worst[2] = worst[2].max((a - mp1_double_sum(x, beta)).abs()).max((b - mp2_double_sum(x, beta)).abs());
        let Ok(mle) = estimate(Estimator::Mle, &s) else { continue };
        let y = power_transform(&s, mle.beta).unwrap();
        type Stat = fn(&Sample, f64) -> pareto_gof::Result<pareto_gof::statistics::StatisticValue>;
        for f in [mp1, mp2, ks, cv, ad, za] as [Stat; 6] {
            let d = (f(&s, mle.beta).unwrap().value - f(&y, 1.0).unwrap().value).abs();
            worst[3] = worst[3].max(d);
        }
    }
    vec![
        ("MP1 vs 1-D quadrature", worst[0], 1e-8),
        ("MP2 vs 2-D quadrature", worst[1], 1e-6),
        ("single vs double sums", worst[2], 1e-10),
        ("pivotal identity", worst[3], 1e-10),
        ("Mellin weights vs quadrature", worst[4], 1e-10),
        ("Mellin vs double sum (relative)", worst[5], 1e-10),
    ]
}

#[test]
fn every_oracle_is_within_tolerance() {
    for (name, worst, tol) in max_deviations() {
        assert!(worst < tol, "{name}: {worst:e}");
    }
}
