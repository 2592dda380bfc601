//! Density of the sample mean implied by the characterizing equation:
//! `h(x̄) ∝ x̄^{n−1} f(x̄)^n`, normalized numerically.

use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::{DistributionSpec, Sampler};
use crate::error::{Error, Result};
use crate::quadrature::line::{integrate, integrate_to_infinity};
use crate::seed;

const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct MeanDensity {
    dist: DistributionSpec,
    n: usize,
    /// Log-kernel offset keeping `exp` in range.
    shift: f64,
    normalizer: f64,
}

impl MeanDensity {
    pub fn new(dist: &DistributionSpec, n: usize) -> Result<Self> {
        if !dist.family().is_continuous() {
            return Err(Error::Unsupported(format!("mean density of discrete {dist}")));
        }
        if n < 1 {
            return Err(Error::Size("n must be at least 1".into()));
        }
        let (lo, hi) = dist.support();
        let center = dist.mean();
        let mut me = MeanDensity {
            dist: dist.clone(),
            n,
            shift: 0.0,
            normalizer: 1.0,
        };
        // Shift by the largest log-kernel value on a coarse log grid around the mean.
        me.shift = (0..=400)
            .map(|i| center * 10f64.powf(-4.0 + 8.0 * i as f64 / 400.0))
            .filter(|&x| x > lo && x < hi)
            .map(|x| me.log_kernel(x))
            .filter(|v| v.is_finite())
            .fold(f64::NEG_INFINITY, f64::max);
        if !me.shift.is_finite() {
            return Err(Error::Integration(format!("kernel of {dist} vanishes on the search grid")));
        }
        let k = |x: f64| me.scaled_kernel(x);
        let z = if hi.is_finite() {
            integrate(k, lo, hi, REL_TOL)?
        } else {
            integrate_to_infinity(k, lo, center, REL_TOL)?
        };
        if !(z.value > 0.0 && z.value.is_finite()) {
            return Err(Error::Integration(format!("normalizer of mean density for {dist} is {}", z.value)));
        }
        me.normalizer = z.value;
        Ok(me)
    }

    fn log_kernel(&self, x: f64) -> f64 {
        let nf = self.n as f64;
        (nf - 1.0) * x.ln() + nf * self.dist.log_pdf_unchecked(x)
    }

    fn scaled_kernel(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        let v = self.log_kernel(x) - self.shift;
        if v == f64::NEG_INFINITY { 0.0 } else { v.exp() }
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("mean density needs x̄ > 0, got {x}")));
        }
        Ok(self.scaled_kernel(x) / self.normalizer)
    }

    /// `P(X̄ ≤ x)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.dist.support();
        if x <= lo {
            return Ok(0.0);
        }
        if x >= hi {
            return Ok(1.0);
        }
        Ok(self.partial(lo, x)?.min(1.0))
    }

    fn partial(&self, a: f64, b: f64) -> Result<f64> {
        Ok(integrate(|x| self.scaled_kernel(x), a, b, 1e-10)?.value / self.normalizer)
    }

    /// CDF at every point of an ascending slice, accumulated piece by piece.
    pub fn cdf_sorted(&self, xs: &[f64]) -> Result<Vec<f64>> {
        if xs.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Domain("points must be ascending".into()));
        }
        let (lo, hi) = self.dist.support();
        let clipped: Vec<f64> = xs.iter().map(|&x| x.clamp(lo, hi)).collect();
        let pieces: Vec<Result<f64>> = (0..clipped.len())
            .into_par_iter()
            .map(|i| {
                let a = if i == 0 { lo } else { clipped[i - 1] };
                if clipped[i] > a { self.partial(a, clipped[i]) } else { Ok(0.0) }
            })
            .collect();
        let mut acc = 0.0;
        pieces
            .into_iter()
            .map(|p| {
                acc += p?;
                Ok(acc.min(1.0))
            })
            .collect()
    }
}

/// `h(x̄)` for one point.
pub fn mean_density(dist: &DistributionSpec, n: usize, xbar: f64) -> Result<f64> {
    MeanDensity::new(dist, n)?.pdf(xbar)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub sample_size: usize,
}

/// Asymptotic Kolmogorov tail `P(K > λ)`.
fn kolmogorov_tail(lambda: f64) -> f64 {
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

/// One-sample Kolmogorov–Smirnov test of `sample` against a CDF given on sorted points.
pub fn ks_test<F>(sample: &[f64], cdf_sorted: F) -> Result<KsResult>
where
    F: FnOnce(&[f64]) -> Result<Vec<f64>>,
{
    if sample.is_empty() {
        return Err(Error::Size("empty sample".into()));
    }
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let cdf = cdf_sorted(&xs)?;
    let nf = xs.len() as f64;
    let d = cdf
        .iter()
        .enumerate()
        .map(|(i, &c)| (c - i as f64 / nf).max((i + 1) as f64 / nf - c))
        .fold(0.0, f64::max);
    let root = nf.sqrt();
    Ok(KsResult {
        statistic: d,
        p_value: kolmogorov_tail((root + 0.12 + 0.11 / root) * d),
        sample_size: xs.len(),
    })
}

/// KS comparison of `count` simulated means of groups of `n` with [`MeanDensity`].
pub fn simulated_mean_check(dist: &DistributionSpec, n: usize, count: usize, seed: u64) -> Result<KsResult> {
    let density = MeanDensity::new(dist, n)?;
    let sampler = Sampler::new(dist)?;
    let means: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed::stream(seed, i as u64);
            (0..n).map(|_| sampler.draw(&mut rng)).sum::<f64>() / n as f64
        })
        .collect();
    ks_test(&means, |xs| density.cdf_sorted(xs))
}
