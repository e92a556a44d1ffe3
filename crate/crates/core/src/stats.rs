//! Small statistics toolbox for the experiment harness: moment summaries,
//! k-statistics, Kolmogorov-Smirnov distances and a log-log power-law fit.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mean and variance of a sample with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub mean_se: f64,
    /// Large-sample standard error of the variance, `sqrt((m4 - m2^2) / m)`.
    pub variance_se: f64,
}

impl Summary {
    pub fn of(samples: &[f64]) -> Self {
        let m = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / m;
        let (m2, m4) = samples.iter().fold((0.0, 0.0), |(a, b), &x| {
            let d = (x - mean) * (x - mean);
            (a + d, b + d * d)
        });
        let (m2, m4) = (m2 / m, m4 / m);
        let variance = if samples.len() > 1 { m2 * m / (m - 1.0) } else { 0.0 };
        Self { count: samples.len(), mean, variance, mean_se: (variance / m).sqrt(), variance_se: ((m4 - m2 * m2).max(0.0) / m).sqrt() }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

pub const MIN_CUMULANT_SAMPLES: usize = 10;

/// Unbiased k-statistics `k_1 .. k_{k_max}` (`k_max <= 4`).
pub fn empirical_cumulants(samples: &[f64], k_max: usize) -> Result<Vec<f64>> {
    if samples.len() < MIN_CUMULANT_SAMPLES {
        return Err(Error::TooFewSamples { needed: MIN_CUMULANT_SAMPLES, got: samples.len() });
    }
    if !(1..=4).contains(&k_max) {
        return Err(Error::Precondition(format!("k_max must be in 1..=4, got {k_max}")));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let mut m = [0.0f64; 5];
    for &x in samples {
        let d = x - mean;
        let d2 = d * d;
        m[2] += d2;
        m[3] += d2 * d;
        m[4] += d2 * d2;
    }
    for v in &mut m[2..] {
        *v /= n;
    }
    let k = [
        mean,
        n / (n - 1.0) * m[2],
        n * n / ((n - 1.0) * (n - 2.0)) * m[3],
        n * n * ((n + 1.0) * m[4] - 3.0 * (n - 1.0) * m[2] * m[2]) / ((n - 1.0) * (n - 2.0) * (n - 3.0)),
    ];
    Ok(k[..k_max].to_vec())
}

/// `sup |F_m - F|` for the empirical CDF `F_m` of `samples`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    let mut sup = 0.0f64;
    let mut i = 0;
    while i < xs.len() {
        // treat runs of equal values as one jump
        let mut j = i;
        while j + 1 < xs.len() && xs[j + 1] == xs[i] {
            j += 1;
        }
        let f = cdf(xs[i]);
        sup = sup.max((f - i as f64 / m).abs()).max(((j + 1) as f64 / m - f).abs());
        i = j + 1;
    }
    sup
}

/// Survival function of the Kolmogorov distribution, `P(K > lambda)`.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov-Smirnov statistic with its asymptotic p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsTest {
    pub statistic: f64,
    pub p_value: f64,
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsTest {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let ne = (n * m / (n + m)).sqrt();
    // Stephens' small-sample correction
    let p_value = kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d);
    KsTest { statistic: d, p_value }
}

/// Bootstrap standard error of `statistic`.
pub fn bootstrap_std_error<R: Rng + ?Sized>(samples: &[f64], statistic: impl Fn(&[f64]) -> f64, resamples: usize, rng: &mut R) -> f64 {
    let mut buf = vec![0.0; samples.len()];
    let stats: Vec<f64> = (0..resamples)
        .map(|_| {
            for slot in buf.iter_mut() {
                *slot = samples[rng.gen_range(0..samples.len())];
            }
            statistic(&buf)
        })
        .collect();
    Summary::of(&stats).std_dev()
}

/// `y ~ c * x^alpha`, fitted by least squares on `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub c: f64,
    pub alpha: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerLawFit> {
    if xs.len() != ys.len() {
        return Err(Error::Precondition("x and y differ in length".into()));
    }
    if xs.len() < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: xs.len() });
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0)) {
        return Err(Error::Precondition("power-law fit needs positive data".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Precondition("x values must not all coincide".into()));
    }
    let alpha = sxy / sxx;
    let intercept = my - alpha * mx;
    let rss: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - alpha * x).powi(2)).sum();
    Ok(PowerLawFit { c: intercept.exp(), alpha, residual: (rss / k).sqrt() })
}
