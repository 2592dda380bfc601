//! Randomized checks of the feasibility conditions and numerical estimates
//! of the constants `c_* ≤ Z_n/S_n ≤ c^*` on the sphere slice `A_n`.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::base_function::BaseFunction;
use crate::error::{Error, Result};
use crate::geometry::{clamp_to_b, coordinate_bounds, lambda_tilde, t_from_lambda};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeasibilityCheck {
    ZeroAtOrigin,
    Nonnegativity,
    Definiteness,
    Homogeneity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityFailure {
    /// Trial index; `None` for the origin check.
    pub trial: Option<usize>,
    pub check: FeasibilityCheck,
    pub lambda: Vec<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub statistic: String,
    pub n: usize,
    pub trials: usize,
    pub passed: bool,
    pub failures: usize,
    /// Lowest-index counterexample.
    pub counterexample: Option<FeasibilityFailure>,
    pub notes: Vec<String>,
}

fn random_point_of_a<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut l: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let mean = l.iter().sum::<f64>() / n as f64;
    for x in &mut l {
        *x -= mean;
    }
    l.sort_by(f64::total_cmp);
    l
}

fn check_trial(u: &BaseFunction, trial: usize, seed: u64, n: usize) -> Option<FeasibilityFailure> {
    let mut rng = seed::stream(seed, trial as u64);
    let lambda = random_point_of_a(n, &mut rng);
    let s: f64 = rng.random_range(0.1..10.0);
    let fail = |check, detail: String| {
        Some(FeasibilityFailure {
            trial: Some(trial),
            check,
            lambda: lambda.clone(),
            detail,
        })
    };
    let value = u.raw_value(&lambda);
    let env = u.envelope(&lambda);
    if !value.is_finite() || value < -1e-12 * env {
        return fail(FeasibilityCheck::Nonnegativity, format!("U(λ) = {value:e}"));
    }
    if value <= 1e-10 * env || value <= 0.0 {
        return fail(
            FeasibilityCheck::Definiteness,
            format!("U(λ) = {value:e} at nonzero λ (scale {env:e})"),
        );
    }
    let scaled: Vec<f64> = lambda.iter().map(|l| s * l).collect();
    let lhs = u.raw_value(&scaled);
    let rhs = s.powf(u.h_degree()) * value;
    if (lhs - rhs).abs() > 1e-9 * rhs.abs() {
        return fail(
            FeasibilityCheck::Homogeneity,
            format!("U({s}λ) = {lhs:e} but s^p U(λ) = {rhs:e}"),
        );
    }
    None
}

/// Tests nonnegativity, definiteness and homogeneity of `u` on random points
/// of `A` (sorted, centered Gaussian draws). Failures are report content.
pub fn validate_feasibility(
    u: &BaseFunction,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<FeasibilityReport> {
    u.check_dimension(n)?;
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let mut failures: Vec<FeasibilityFailure> = Vec::new();
    let zero = vec![0.0; n];
    let at_zero = u.raw_value(&zero);
    if at_zero != 0.0 {
        failures.push(FeasibilityFailure {
            trial: None,
            check: FeasibilityCheck::ZeroAtOrigin,
            lambda: zero,
            detail: format!("U(0) = {at_zero:e}"),
        });
    }
    let found: Vec<Option<FeasibilityFailure>> = (0..trials)
        .into_par_iter()
        .map(|i| check_trial(u, i, seed, n))
        .collect();
    failures.extend(found.into_iter().flatten());
    Ok(FeasibilityReport {
        statistic: u.label().to_string(),
        n,
        trials,
        passed: failures.is_empty(),
        failures: failures.len(),
        counterexample: failures.into_iter().next(),
        notes: u.notes().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HBounds {
    /// Estimate of `c_*`: the smallest value seen.
    pub lower: f64,
    /// Estimate of `c^*`: the largest value seen.
    pub upper: f64,
    pub argmin: Vec<f64>,
    pub argmax: Vec<f64>,
    pub evaluations: usize,
}

struct SearchTrace {
    best_t: Vec<f64>,
    best: f64,
    min: (f64, Vec<f64>),
    max: (f64, Vec<f64>),
    evaluations: usize,
}

fn objective(u: &BaseFunction, n: usize, t: &[f64]) -> f64 {
    u.degree_one_unchecked(&lambda_tilde(n, t))
}

/// Coordinate pattern search over `B_{n−2}`; `sign = 1` maximizes, `-1` minimizes.
fn pattern_search(u: &BaseFunction, n: usize, start: Vec<f64>, sign: f64) -> SearchTrace {
    let mut t = start;
    clamp_to_b(n, &mut t);
    let mut f = objective(u, n, &t);
    let mut trace = SearchTrace {
        best_t: t.clone(),
        best: f,
        min: (f, t.clone()),
        max: (f, t.clone()),
        evaluations: 1,
    };
    let mut step = 0.05;
    let mut iterations = 0;
    while step > 1e-12 && iterations < 50_000 {
        iterations += 1;
        let mut improved = false;
        'dirs: for k in 0..t.len() {
            for dir in [1.0, -1.0] {
                let mut cand = t.clone();
                cand[k] += dir * step;
                clamp_to_b(n, &mut cand);
                if cand == t {
                    continue;
                }
                let v = objective(u, n, &cand);
                trace.evaluations += 1;
                if v < trace.min.0 {
                    trace.min = (v, cand.clone());
                }
                if v > trace.max.0 {
                    trace.max = (v, cand.clone());
                }
                if sign * v > sign * f {
                    t = cand;
                    f = v;
                    improved = true;
                    break 'dirs;
                }
            }
        }
        if improved {
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }
    trace.best_t = t;
    trace.best = f;
    trace
}

/// Two-level profiles (k low values, n − k high) and the `(−1, 0, …, 0, 1)`
/// profile, scaled onto `A_n`; extremes of many catalog members sit there.
fn structured_starts(n: usize) -> Vec<Vec<f64>> {
    let nf = n as f64;
    let norm = |mut l: Vec<f64>| {
        let ss: f64 = l.iter().map(|x| x * x).sum();
        let c = ((nf - 1.0) / ss).sqrt();
        for x in &mut l {
            *x *= c;
        }
        t_from_lambda(&l)
    };
    let mut starts = Vec::new();
    for k in 1..n {
        let lo = -((n - k) as f64);
        let hi = k as f64;
        let l: Vec<f64> = (0..n).map(|i| if i < k { lo } else { hi }).collect();
        starts.push(norm(l));
    }
    let mut l = vec![0.0; n];
    l[0] = -1.0;
    l[n - 1] = 1.0;
    starts.push(norm(l));
    starts
}

fn random_start<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut t = Vec::with_capacity(n - 2);
    let (mut t_prev, mut g_prev) = (0.0, 1.0);
    for k in 1..=n - 2 {
        let (lo, hi) = coordinate_bounds(n, k, t_prev, g_prev);
        let lo = lo.min(hi);
        let tk = lo + (hi - lo) * rng.random::<f64>();
        t.push(tk);
        t_prev = tk;
        g_prev -= tk * tk;
    }
    t
}

/// Estimates `(c_*, c^*)` for the degree-one version of `u` on `A_n`
/// by random restarts plus local pattern search in `t` coordinates.
///
/// `budget` is the number of random restarts (structured starts are added on top).
pub fn estimate_h_bounds(u: &BaseFunction, n: usize, budget: usize, seed: u64) -> Result<HBounds> {
    if n < 3 {
        return Err(Error::Size(format!("n must be at least 3, got {n}")));
    }
    u.check_dimension(n)?;
    if budget < 10 {
        return Err(Error::Config(format!("bound-estimation budget must be >= 10, got {budget}")));
    }
    let mut starts = structured_starts(n);
    starts.extend((0..budget).map(|i| random_start(n, &mut seed::stream(seed, i as u64))));

    let traces: Vec<(SearchTrace, SearchTrace)> = starts
        .into_par_iter()
        .map(|s| {
            (
                pattern_search(u, n, s.clone(), -1.0),
                pattern_search(u, n, s, 1.0),
            )
        })
        .collect();

    let mut lower = (f64::INFINITY, Vec::new());
    let mut upper = (f64::NEG_INFINITY, Vec::new());
    let mut evaluations = 0;
    for tr in traces.iter().flat_map(|(a, b)| [a, b]) {
        evaluations += tr.evaluations;
        for (v, t) in [(&tr.min.0, &tr.min.1), (&tr.best, &tr.best_t)] {
            if *v < lower.0 {
                lower = (*v, t.clone());
            }
        }
        for (v, t) in [(&tr.max.0, &tr.max.1), (&tr.best, &tr.best_t)] {
            if *v > upper.0 {
                upper = (*v, t.clone());
            }
        }
    }
    Ok(HBounds {
        lower: lower.0,
        upper: upper.0,
        argmin: lambda_tilde(n, &lower.1),
        argmax: lambda_tilde(n, &upper.1),
        evaluations,
    })
}
