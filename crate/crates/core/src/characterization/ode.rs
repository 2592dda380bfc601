//! The invariant `x² (log f)″`, constant exactly for gamma densities.

use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdeInvariant {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub mean: f64,
    /// Largest `|value − mean|`.
    pub max_deviation: f64,
    /// `max − min` over the grid.
    pub spread: f64,
    pub mode: DerivativeMode,
}

pub fn ode_invariant(dist: &DistributionSpec, grid: &[f64], mode: DerivativeMode) -> Result<OdeInvariant> {
    if grid.is_empty() {
        return Err(Error::Size("empty grid".into()));
    }
    let values = grid
        .iter()
        .map(|&x| {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::Domain(format!("grid point {x} is not in (0, ∞)")));
            }
            let d = match mode {
                DerivativeMode::Analytic => dist.log_pdf_derivs(x)?,
                DerivativeMode::FiniteDifference => dist.log_pdf_derivs_fd(x)?,
            };
            Ok(x * x * d.d2)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let max_deviation = values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(OdeInvariant {
        grid: grid.to_vec(),
        values,
        mean,
        max_deviation,
        spread: hi - lo,
        mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_is_constant() {
        let d = DistributionSpec::gamma(2.0, 1.0).unwrap();
        let grid = [0.5, 1.0, 2.0, 5.0, 10.0];
        let a = ode_invariant(&d, &grid, DerivativeMode::Analytic).unwrap();
        assert!(a.values.iter().all(|v| (v + 1.0).abs() < 1e-8));
        let f = ode_invariant(&d, &grid, DerivativeMode::FiniteDifference).unwrap();
        assert!(f.values.iter().all(|v| (v + 1.0).abs() < 1e-4), "{f:?}");
        assert!(f.spread < 1e-4);
    }

    #[test]
    fn exponential_is_zero() {
        let d = DistributionSpec::gamma(1.0, 3.0).unwrap();
        let a = ode_invariant(&d, &[0.1, 3.0, 40.0], DerivativeMode::Analytic).unwrap();
        assert!(a.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn lognormal_varies() {
        let d = DistributionSpec::lognormal(0.0, 1.0).unwrap();
        let a = ode_invariant(&d, &[1.0, std::f64::consts::E], DerivativeMode::Analytic).unwrap();
        assert!((a.values[0] - 0.0).abs() < 1e-12 && (a.values[1] - 1.0).abs() < 1e-12, "{a:?}");
        assert!((a.spread - 1.0).abs() < 1e-12);
        assert!((a.max_deviation - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bad_grid() {
        let d = DistributionSpec::gamma(2.0, 1.0).unwrap();
        assert!(ode_invariant(&d, &[1.0, -1.0], DerivativeMode::Analytic).is_err());
        assert!(ode_invariant(&d, &[], DerivativeMode::Analytic).is_err());
    }
}
