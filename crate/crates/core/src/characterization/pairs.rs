//! `(x̄, V)` pairs: sample means against the scale-free quotient `Z/x̄`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{DistributionSpec, Sampler};
use crate::error::{Error, Result};
use crate::seed;
use crate::statistics::{degree_one_statistic, BaseFunction, OrderedSample};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSeries {
    /// `(mean, quotient)` per group.
    pub pairs: Vec<(f64, f64)>,
    /// Group size.
    pub n: usize,
    /// Number of groups.
    pub m: usize,
    pub statistic: String,
    pub source: String,
    /// Groups with all values equal; their quotient is set to 0.
    pub degenerate_groups: usize,
}

impl PairSeries {
    pub fn means(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn quotients(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

/// Mean and quotient of one group; `None` quotient flags a degenerate group.
pub(crate) fn group_pair(u: &BaseFunction, values: &[f64]) -> Result<(f64, Option<f64>)> {
    let s = OrderedSample::new(values)?;
    if s.is_degenerate() {
        return Ok((s.mean(), None));
    }
    Ok((s.mean(), Some(degree_one_statistic(u, &s)? / s.mean())))
}

fn collect(
    results: Vec<Result<(f64, Option<f64>)>>,
    n: usize,
    statistic: &BaseFunction,
    source: String,
) -> Result<PairSeries> {
    let mut pairs = Vec::with_capacity(results.len());
    let mut degenerate_groups = 0;
    for r in results {
        let (mean, q) = r?;
        if q.is_none() {
            degenerate_groups += 1;
        }
        pairs.push((mean, q.unwrap_or(0.0)));
    }
    Ok(PairSeries {
        m: pairs.len(),
        pairs,
        n,
        statistic: statistic.label().to_string(),
        source,
        degenerate_groups,
    })
}

fn check_sizes(u: &BaseFunction, n: usize, m: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Size(format!("group size must be at least 3, got {n}")));
    }
    if m < 2 {
        return Err(Error::Size(format!("need at least 2 groups, got {m}")));
    }
    u.check_dimension(n)
}

/// Draws `m` groups of size `n` from `dist`; group `i` uses stream `(seed, i)`.
pub fn pair_series(dist: &DistributionSpec, u: &BaseFunction, n: usize, m: usize, seed: u64) -> Result<PairSeries> {
    check_sizes(u, n, m)?;
    let sampler = Sampler::new(dist)?;
    let results: Vec<_> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed::stream(seed, i as u64);
            let values: Vec<f64> = (0..n).map(|_| sampler.draw(&mut rng)).collect();
            group_pair(u, &values)
        })
        .collect();
    collect(results, n, u, dist.to_string())
}

/// Splits `data` into consecutive groups of `n` (a remainder is dropped).
pub fn pair_series_from_data(data: &[f64], u: &BaseFunction, n: usize, source: &str) -> Result<PairSeries> {
    if let Some(bad) = data.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::Domain(format!("data must be positive and finite, found {bad}")));
    }
    let m = data.len().checked_div(n).unwrap_or(0);
    check_sizes(u, n, m)?;
    let results: Vec<_> = data.par_chunks_exact(n).map(|g| group_pair(u, g)).collect();
    collect(results, n, u, source.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_pairs_are_positive() {
        let d = DistributionSpec::gamma(2.0, 1.0).unwrap();
        let p = pair_series(&d, &BaseFunction::range(), 5, 1000, 3).unwrap();
        assert_eq!(p.m, 1000);
        assert_eq!(p.pairs.len(), 1000);
        assert!(p.pairs.iter().all(|&(x, v)| x > 0.0 && v > 0.0));
        assert_eq!(p.degenerate_groups, 0);
    }

    #[test]
    fn quotient_equals_statistic_of_ratios() {
        // Range of x/x̄ − 1 is the quotient for the degree-one Range.
        let d = DistributionSpec::lognormal(0.0, 1.0).unwrap();
        let p = pair_series(&d, &BaseFunction::range(), 4, 50, 8).unwrap();
        let s = Sampler::new(&d).unwrap();
        for (i, &(mean, q)) in p.pairs.iter().enumerate() {
            let mut rng = seed::stream(8, i as u64);
            let mut v: Vec<f64> = (0..4).map(|_| s.draw(&mut rng)).collect();
            v.sort_by(f64::total_cmp);
            let ratios: Vec<f64> = v.iter().map(|x| x / mean - 1.0).collect();
            let direct = ratios[3] - ratios[0];
            assert!((q - direct).abs() <= 1e-12 * direct, "{q} {direct}");
        }
    }

    #[test]
    fn scaling_data() {
        let d = DistributionSpec::gamma(3.0, 2.0).unwrap();
        let x = d.sample(60, 2).unwrap();
        let y: Vec<f64> = x.iter().map(|v| 7.5 * v).collect();
        for u in [BaseFunction::range(), BaseFunction::gini(), BaseFunction::cv()] {
            let a = pair_series_from_data(&x, &u, 6, "x").unwrap();
            let b = pair_series_from_data(&y, &u, 6, "y").unwrap();
            for (p, q) in a.pairs.iter().zip(&b.pairs) {
                assert!((q.0 - 7.5 * p.0).abs() < 1e-12 * q.0);
                assert!((q.1 - p.1).abs() < 1e-12 * p.1);
            }
        }
    }

    #[test]
    fn discrete_ties_counted() {
        let d = DistributionSpec::discrete(vec![1.0, 2.0]).unwrap();
        let p = pair_series(&d, &BaseFunction::range(), 3, 400, 1).unwrap();
        // P(all equal) = 1/4 per group
        assert!(p.degenerate_groups > 60 && p.degenerate_groups < 140, "{}", p.degenerate_groups);
        assert_eq!(p.pairs.iter().filter(|p| p.1 == 0.0).count(), p.degenerate_groups);
    }

    #[test]
    fn bad_inputs() {
        let u = BaseFunction::range();
        assert!(matches!(pair_series_from_data(&[1.0, -1.0, 2.0, 3.0, 4.0, 5.0], &u, 3, ""), Err(Error::Domain(_))));
        assert!(matches!(pair_series_from_data(&[1.0, 2.0, 3.0, 4.0], &u, 3, ""), Err(Error::Size(_))));
        let d = DistributionSpec::gamma(1.0, 1.0).unwrap();
        assert!(matches!(pair_series(&d, &u, 2, 10, 0), Err(Error::Size(_))));
    }
}
