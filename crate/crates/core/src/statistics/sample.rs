use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sorted sample of positive reals with cached moments.
///
/// `variance` uses the `n − 1` divisor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderedSample {
    values: Vec<f64>,
    mean: f64,
    variance: f64,
    sd: f64,
}

impl OrderedSample {
    /// Sorts `raw` and caches its moments.
    pub fn new(raw: &[f64]) -> Result<Self> {
        let mut values = raw.to_vec();
        values.sort_by(f64::total_cmp);
        Self::from_sorted(values)
    }

    /// Wraps an already sorted vector.
    pub fn from_sorted(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Size(format!(
                "a sample needs at least 2 values, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Domain(format!("sample values must be positive, got {bad}")));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Domain("values are not sorted".into()));
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let variance = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        Ok(OrderedSample {
            values,
            mean,
            variance,
            sd: variance.sqrt(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn sd(&self) -> f64 {
        self.sd
    }

    /// All values equal (zero sample deviation).
    pub fn is_degenerate(&self) -> bool {
        self.variance == 0.0
    }

    /// `x_(i) − x̄`, a point of the ordered zero-sum set.
    pub fn deviations(&self) -> Vec<f64> {
        self.values.iter().map(|x| x - self.mean).collect()
    }

    pub fn coefficient_of_variation(&self) -> f64 {
        self.sd / self.mean
    }

    /// Every value multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Parameter(format!("scale factor must be positive, got {c}")));
        }
        Self::from_sorted(self.values.iter().map(|x| x * c).collect())
    }
}

/// Sorted copy of `raw` with cached mean, variance and deviation.
pub fn order_statistics(raw: &[f64]) -> Result<OrderedSample> {
    OrderedSample::new(raw)
}
