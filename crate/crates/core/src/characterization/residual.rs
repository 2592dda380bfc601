//! Residual of the integro-functional equation that singles out gamma densities.
//!
//! With `σ_i(t) = λ̃_i(t)/U(λ̃(t))` and `G` the measure with density
//! `(1/U)^{n−1} g^{−1/2}`, the equation reads
//! `∫ Π f(x̄(1 + vσ_i)) dG = C f(x̄)^n ∫ Π f(1 + vσ_i) dG` with `C = f(1)^{−n}`.
//! Both sides are estimated on one node set so quadrature noise cancels.

use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::geometry::lambda_tilde;
use crate::quadrature::{weighted_points, Weighting};
use crate::statistics::{estimate_h_bounds, BaseFunction};

/// Share of `v₀` used as the ceiling of the `v` grid.
pub const V_CEILING_FACTOR: f64 = 0.95;

const EPS: f64 = 1e-30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VGrid {
    /// Multiples of the ceiling `0.95·v₀`, each in `[0, 1)`.
    Fractions(Vec<f64>),
    /// Absolute `v` values.
    Absolute(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualConfig {
    pub density: DistributionSpec,
    pub statistic: BaseFunction,
    pub n: usize,
    pub xbar_grid: Vec<f64>,
    pub v_grid: VGrid,
    /// Monte Carlo nodes shared by every grid point.
    pub budget: usize,
    /// Random restarts for the `c_*` estimate behind `v₀`.
    pub bounds_budget: usize,
    pub seed: u64,
}

impl ResidualConfig {
    /// Grid `x̄ ∈ {0.5, 1, 2, 4}`, `v ∈ {0, 1/4, 1/2}` of the ceiling.
    pub fn standard(density: DistributionSpec, statistic: BaseFunction, n: usize, budget: usize, seed: u64) -> Self {
        ResidualConfig {
            density,
            statistic,
            n,
            xbar_grid: vec![0.5, 1.0, 2.0, 4.0],
            v_grid: VGrid::Fractions(vec![0.0, 0.25, 0.5]),
            budget,
            bounds_budget: 50,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualPoint {
    pub xbar: f64,
    pub v: f64,
    /// Natural logs of the two sides.
    pub log_lhs: f64,
    pub log_rhs: f64,
    /// `|L − R| / (|L| + |R| + ε)`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub points: Vec<ResidualPoint>,
    pub max_residual: f64,
    pub c_lower: f64,
    pub v0: f64,
    pub v_ceiling: f64,
    pub n: usize,
    pub statistic: String,
    pub density: String,
    pub budget: usize,
    pub seed: u64,
}

fn relative_residual(log_l: f64, log_r: f64) -> f64 {
    match (log_l == f64::NEG_INFINITY, log_r == f64::NEG_INFINITY) {
        (true, true) => 0.0,
        (true, false) | (false, true) => {
            let big = log_l.max(log_r).exp();
            big / (big + EPS)
        }
        _ => {
            // (|L − R|)/(L + R + ε) with both sides rescaled by the larger one
            let top = log_l.max(log_r);
            let (l, r) = ((log_l - top).exp(), (log_r - top).exp());
            (l - r).abs() / (l + r + (EPS.ln() - top).exp())
        }
    }
}

struct Node {
    /// `log(weight · U^{1−n})`.
    log_mass: f64,
    sigma: Vec<f64>,
}

fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = terms.collect();
    let top = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + v.iter().map(|x| (x - top).exp()).sum::<f64>().ln()
}

/// `log ∫ Π f(x̄(1 + vσ_i)) dG` (unnormalized) over the shared nodes.
fn log_side(nodes: &[Node], f: &DistributionSpec, xbar: f64, v: f64) -> Result<f64> {
    let mut terms = Vec::with_capacity(nodes.len());
    for node in nodes {
        let mut s = node.log_mass;
        for &sig in &node.sigma {
            let arg = xbar * (1.0 + v * sig);
            if !(arg > 0.0) {
                return Err(Error::Config(format!(
                    "density argument {arg} ≤ 0 at x̄ = {xbar}, v = {v}; v exceeds the admissible range"
                )));
            }
            s += f.log_pdf_unchecked(arg);
        }
        terms.push(s);
    }
    Ok(log_sum_exp(terms.into_iter()) - (nodes.len() as f64).ln())
}

pub fn functional_residual(cfg: &ResidualConfig) -> Result<ResidualReport> {
    let n = cfg.n;
    if !cfg.density.family().is_continuous() {
        return Err(Error::Unsupported(format!("residual for discrete {}", cfg.density)));
    }
    if cfg.xbar_grid.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
        return Err(Error::Config("x̄ grid must be positive".into()));
    }
    if cfg.budget < 1000 {
        return Err(Error::Config(format!("budget must be at least 1000, got {}", cfg.budget)));
    }
    let bounds = estimate_h_bounds(&cfg.statistic, n, cfg.bounds_budget, cfg.seed)?;
    let nf = n as f64;
    let v0 = bounds.lower * nf.sqrt() / (nf - 1.0);
    let v_ceiling = V_CEILING_FACTOR * v0;
    let vs: Vec<f64> = match &cfg.v_grid {
        VGrid::Fractions(fr) => {
            if let Some(bad) = fr.iter().find(|x| !(**x >= 0.0 && **x < 1.0)) {
                return Err(Error::Config(format!("v fraction {bad} outside [0, 1)")));
            }
            fr.iter().map(|x| x * v_ceiling).collect()
        }
        VGrid::Absolute(v) => {
            if let Some(bad) = v.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
                return Err(Error::Config(format!("v = {bad} must be finite and nonnegative")));
            }
            v.clone()
        }
    };

    let nodes: Vec<Node> = weighted_points(n, Weighting::InverseSqrtG, cfg.budget, cfg.seed)?
        .into_iter()
        .filter(|p| p.weight > 0.0)
        .map(|p| {
            let lambda = lambda_tilde(n, p.point.t());
            let u = cfg.statistic.degree_one_unchecked(&lambda);
            if !(u > 0.0) {
                return Err(Error::Degenerate(format!("U(λ̃) = {u} at t = {:?}", p.point.t())));
            }
            Ok(Node {
                log_mass: p.weight.ln() - (nf - 1.0) * u.ln(),
                sigma: lambda.iter().map(|l| l / u).collect(),
            })
        })
        .collect::<Result<_>>()?;

    let log_f1 = cfg.density.log_pdf_unchecked(1.0);
    let mut points = Vec::new();
    for &v in &vs {
        let at_one = log_side(&nodes, &cfg.density, 1.0, v)?;
        for &xbar in &cfg.xbar_grid {
            let log_lhs = log_side(&nodes, &cfg.density, xbar, v)?;
            let log_rhs = nf * (cfg.density.log_pdf_unchecked(xbar) - log_f1) + at_one;
            points.push(ResidualPoint {
                xbar,
                v,
                log_lhs,
                log_rhs,
                residual: relative_residual(log_lhs, log_rhs),
            });
        }
    }
    Ok(ResidualReport {
        max_residual: points.iter().map(|p| p.residual).fold(0.0, f64::max),
        points,
        c_lower: bounds.lower,
        v0,
        v_ceiling,
        n,
        statistic: cfg.statistic.label().to_string(),
        density: cfg.density.to_string(),
        budget: cfg.budget,
        seed: cfg.seed,
    })
}
