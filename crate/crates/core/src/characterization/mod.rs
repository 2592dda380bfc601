//! Tests and diagnostics built on the independence of the sample mean and
//! scale-free statistics, which holds exactly for gamma parents.

mod dcov;
mod experiment;
mod gof;
mod mean_density;
mod ode;
mod pairs;
mod residual;

pub use dcov::{distance_covariance, permutation_pvalue, IndependenceReport};
pub use experiment::{power_experiment, ExperimentConfig, ExperimentRow, ExperimentTable, CSV_HEADER};
pub use gof::gamma_gof_test;
pub use mean_density::{ks_test, mean_density, simulated_mean_check, KsResult, MeanDensity};
pub use ode::{ode_invariant, DerivativeMode, OdeInvariant};
pub use pairs::{pair_series, pair_series_from_data, PairSeries};
pub use residual::{functional_residual, ResidualConfig, ResidualPoint, ResidualReport, VGrid, V_CEILING_FACTOR};
