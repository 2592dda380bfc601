//! Numerical toolkit for the gamma characterization through independence of
//! the sample mean and scale-free statistics of the ordered sample.

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod characterization;
pub mod distributions;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod reporting;
pub mod seed;
pub mod statistics;

pub use distributions::{DistributionSpec, Family};
pub use error::{Error, Result};
pub use geometry::SimplexPoint;
pub use quadrature::{IntegrationMethod, IntegrationResult};
pub use statistics::{BaseFunction, OrderedSample};
