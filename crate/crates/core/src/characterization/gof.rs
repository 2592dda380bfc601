//! Goodness of fit to the gamma family through independence of mean and quotient.

use rand::seq::SliceRandom;

use super::dcov::{permutation_pvalue, IndependenceReport};
use super::pairs::pair_series_from_data;
use crate::error::{Error, Result};
use crate::seed;
use crate::statistics::BaseFunction;

/// Shuffles `data` (stream `(seed, 0)`), splits it into `⌊len/n⌋` groups and
/// tests independence of group means and quotients (stream `(seed, 1)`).
/// Rejection is evidence against a gamma parent.
pub fn gamma_gof_test(
    data: &[f64],
    u: &BaseFunction,
    n: usize,
    alpha: f64,
    permutations: usize,
    seed: u64,
) -> Result<IndependenceReport> {
    if let Some(bad) = data.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::Domain(format!("data must be positive and finite, found {bad}")));
    }
    if n < 3 {
        return Err(Error::Size(format!("group size must be at least 3, got {n}")));
    }
    let groups = data.len() / n;
    if groups < 4 {
        return Err(Error::Size(format!(
            "{} values make {groups} groups of {n}; at least 4 groups are needed",
            data.len()
        )));
    }
    let mut shuffled = data.to_vec();
    shuffled.shuffle(&mut seed::stream(seed, 0));
    let pairs = pair_series_from_data(&shuffled, u, n, "data")?;
    let mut report = permutation_pvalue(&pairs, permutations, alpha, seed::derive_seed(seed, 1))?;
    report.seed = seed;
    Ok(report)
}
