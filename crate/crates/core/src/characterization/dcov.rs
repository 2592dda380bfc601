//! Distance covariance and its one-sided permutation test.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pairs::PairSeries;
use crate::error::{Error, Result};
use crate::seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    /// Sample distance covariance (square root of the V-statistic).
    pub dcov: f64,
    pub p_value: f64,
    pub permutations: usize,
    pub alpha: f64,
    /// `p_value < alpha`.
    pub reject: bool,
    pub n: usize,
    pub m: usize,
    pub statistic: String,
    pub source: String,
    pub degenerate_groups: usize,
    pub seed: u64,
}

/// Row-major `m × m` matrix `|x_i − x_j|`, double centered.
pub(crate) fn double_centered(x: &[f64]) -> Vec<f64> {
    let m = x.len();
    let mut a = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            a[i * m + j] = (x[i] - x[j]).abs();
        }
    }
    let row: Vec<f64> = (0..m).map(|i| a[i * m..(i + 1) * m].iter().sum::<f64>() / m as f64).collect();
    let grand = row.iter().sum::<f64>() / m as f64;
    for i in 0..m {
        for j in 0..m {
            a[i * m + j] += grand - row[i] - row[j];
        }
    }
    a
}

/// `m² · V²` for the pairing `x_i ↔ y_{perm(i)}`, using symmetry of both matrices.
fn cross_sum(a: &[f64], b: &[f64], m: usize, perm: &[usize]) -> f64 {
    let mut total = 0.0;
    for i in 0..m {
        let pi = perm[i];
        let arow = &a[i * m..(i + 1) * m];
        let brow = &b[pi * m..(pi + 1) * m];
        let mut s = 0.0;
        for j in i + 1..m {
            s += arow[j] * brow[perm[j]];
        }
        total += 2.0 * s + arow[i] * brow[pi];
    }
    total
}

fn dcov_squared(x: &[f64], y: &[f64]) -> f64 {
    let m = x.len();
    let identity: Vec<usize> = (0..m).collect();
    cross_sum(&double_centered(x), &double_centered(y), m, &identity) / (m * m) as f64
}

fn check_m(m: usize) -> Result<()> {
    if m < 4 {
        Err(Error::Size(format!("distance covariance needs at least 4 pairs, got {m}")))
    } else {
        Ok(())
    }
}

/// Sample distance covariance of the two coordinates of `pairs`.
pub fn distance_covariance(pairs: &PairSeries) -> Result<f64> {
    check_m(pairs.pairs.len())?;
    Ok(dcov_squared(&pairs.means(), &pairs.quotients()).max(0.0).sqrt())
}

/// Permutation p-value for independence of mean and quotient.
///
/// Permutation `k` shuffles the quotients with stream `(seed, k)`;
/// `p = (1 + #{permuted ≥ observed}) / (permutations + 1)`.
pub fn permutation_pvalue(pairs: &PairSeries, permutations: usize, alpha: f64, seed: u64) -> Result<IndependenceReport> {
    let m = pairs.pairs.len();
    check_m(m)?;
    if permutations < 99 {
        return Err(Error::Config(format!("need at least 99 permutations, got {permutations}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Config(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let a = double_centered(&pairs.means());
    let b = double_centered(&pairs.quotients());
    let identity: Vec<usize> = (0..m).collect();
    let observed = cross_sum(&a, &b, m, &identity);
    let cutoff = observed - 1e-12 * observed.abs();
    let exceed: usize = (0..permutations)
        .into_par_iter()
        .map(|k| {
            let mut perm = identity.clone();
            perm.shuffle(&mut seed::stream(seed, k as u64));
            usize::from(cross_sum(&a, &b, m, &perm) >= cutoff)
        })
        .sum();
    let p_value = (1 + exceed) as f64 / (permutations + 1) as f64;
    Ok(IndependenceReport {
        dcov: (observed / (m * m) as f64).max(0.0).sqrt(),
        p_value,
        permutations,
        alpha,
        reject: p_value < alpha,
        n: pairs.n,
        m,
        statistic: pairs.statistic.clone(),
        source: pairs.source.clone(),
        degenerate_groups: pairs.degenerate_groups,
        seed,
    })
}
