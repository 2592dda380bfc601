//! Shared inputs for the benchmarks.

use gammachar::characterization::{pair_series, PairSeries};
use gammachar::statistics::BaseFunction;
use gammachar::DistributionSpec;

/// `m` groups of five Gamma(2, 1) draws reduced to (mean, range quotient) pairs.
pub fn gamma_pairs(m: usize, seed: u64) -> PairSeries {
    let d = DistributionSpec::gamma(2.0, 1.0).expect("valid gamma");
    pair_series(&d, &BaseFunction::range(), 5, m, seed).expect("pair series")
}
