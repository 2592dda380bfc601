//! Order statistics, the feasible-definite-statistic catalog, and its checks.

mod base_function;
mod feasibility;
mod sample;

pub use base_function::{
    check_in_a, degree_one_statistic, evaluate_base_function, feasible_statistic,
    gini_mean_difference, parse_matrix_csv, read_matrix_csv, BaseFunction, BaseKind,
};
pub use feasibility::{
    estimate_h_bounds, validate_feasibility, FeasibilityCheck, FeasibilityFailure,
    FeasibilityReport, HBounds,
};
pub use sample::{order_statistics, OrderedSample};
