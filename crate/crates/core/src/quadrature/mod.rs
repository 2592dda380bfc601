//! Integration over `B_{n−2}`: the closed-form constant `I_{n−2}`, a generic
//! integrator, and the weight of the measure `G`.
//!
//! The default Monte Carlo rule pushes uniform points of the unit cube
//! through the nested bounds of `B_{n−2}` one coordinate at a time, so every
//! draw lands in the domain and the estimator weight is the product of the
//! conditional interval widths. For the `g^{−1/2}` weighting the last
//! coordinate is written as `t = √G sin θ`, which turns `g^{−1/2} dt` into
//! `dθ` and removes the boundary singularity.

pub mod line;

use std::collections::HashMap;
use std::sync::Mutex;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::geometry::{b_domain_contains, bounding_box, coordinate_bounds, lambda_tilde, SimplexPoint, BOUNDARY_G};
use crate::seed;
use crate::statistics::BaseFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegrationMethod {
    /// Sequential map from the unit cube (default).
    MonteCarlo,
    /// Uniform draws on the bounding box, rejected outside `B_{n−2}`.
    BoxRejection,
    /// Cell midpoints of a tensor grid on the unit cube, through the same map.
    TensorGrid,
}

impl std::str::FromStr for IntegrationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mc" | "monte-carlo" | "montecarlo" => Ok(Self::MonteCarlo),
            "box" | "rejection" | "box-rejection" => Ok(Self::BoxRejection),
            "grid" | "tensor" | "tensor-grid" => Ok(Self::TensorGrid),
            other => Err(Error::Parse(format!("unknown integration method '{other}'"))),
        }
    }
}

/// Reference measure the integrand is integrated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weighting {
    /// Plain `dt`.
    Lebesgue,
    /// `g_{n−2}(t)^{−1/2} dt`.
    InverseSqrtG,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationResult {
    pub value: f64,
    /// Zero for the deterministic grid.
    pub standard_error: f64,
    pub evaluations: u64,
    pub method: IntegrationMethod,
}

/// `I_{n−2} = 2π^{(n−1)/2} / (n! Γ((n−1)/2))`, evaluated in log space.
pub fn closed_form_i(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Size(format!("n must be at least 3, got {n}")));
    }
    let nf = n as f64;
    let log = std::f64::consts::LN_2 + 0.5 * (nf - 1.0) * std::f64::consts::PI.ln()
        - ln_gamma(nf + 1.0)
        - ln_gamma(0.5 * (nf - 1.0));
    Ok(log.exp())
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let d = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        Moments {
            count,
            mean: self.mean + d * w,
            m2: self.m2 + other.m2 + d * d * self.count as f64 * w,
        }
    }

    fn standard_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2.max(0.0) / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

/// Maps `u ∈ [0,1)^{n−2}` onto `B_{n−2}`, writing the point into `t` and
/// returning the estimator weight (product of conditional widths).
pub(crate) fn map_unit_cube(n: usize, u: &[f64], weighting: Weighting, t: &mut [f64]) -> f64 {
    let d = n - 2;
    let mut weight = 1.0;
    let (mut t_prev, mut g_prev) = (0.0, 1.0);
    for k in 1..=d {
        let (lo, hi) = coordinate_bounds(n, k, t_prev, g_prev);
        if hi <= lo {
            t[k - 1] = hi;
            return 0.0;
        }
        let tk = if k == d && weighting == Weighting::InverseSqrtG {
            let root = g_prev.max(0.0).sqrt();
            if root == 0.0 {
                t[k - 1] = 0.0;
                return 0.0;
            }
            let a = (lo / root).clamp(-1.0, 1.0).asin();
            let b = (hi / root).clamp(-1.0, 1.0).asin();
            weight *= b - a;
            root * (a + u[k - 1] * (b - a)).sin()
        } else {
            weight *= hi - lo;
            lo + u[k - 1] * (hi - lo)
        };
        t[k - 1] = tk;
        t_prev = tk;
        g_prev -= tk * tk;
    }
    weight
}

const CHUNK: usize = 4096;

fn check_value(v: f64, t: &[f64]) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Integration(format!("integrand is {v} at t = {t:?}")))
    }
}

fn mc_chunk<F>(n: usize, f: &F, weighting: Weighting, count: usize, seed: u64) -> Result<Moments>
where
    F: Fn(&SimplexPoint) -> f64,
{
    let d = n - 2;
    let mut rng = seed::rng(seed);
    let mut u = vec![0.0; d];
    let mut t = vec![0.0; d];
    let mut m = Moments::default();
    while (m.count as usize) < count {
        u.iter_mut().for_each(|x| *x = rng.random());
        let w = map_unit_cube(n, &u, weighting, &mut t);
        if w == 0.0 {
            m.push(0.0);
            continue;
        }
        let p = SimplexPoint::new_unchecked(n, t.clone());
        if p.g_last() < BOUNDARY_G {
            continue;
        }
        m.push(check_value(w * f(&p), &t)?);
    }
    Ok(m)
}

fn box_chunk<F>(n: usize, f: &F, weighting: Weighting, count: usize, seed: u64) -> Result<Moments>
where
    F: Fn(&SimplexPoint) -> f64,
{
    let bx = bounding_box(n);
    let volume: f64 = bx.iter().map(|(lo, hi)| hi - lo).product();
    let mut rng = seed::rng(seed);
    let mut t = vec![0.0; n - 2];
    let mut m = Moments::default();
    while (m.count as usize) < count {
        for (tk, (lo, hi)) in t.iter_mut().zip(&bx) {
            *tk = lo + (hi - lo) * rng.random::<f64>();
        }
        if !b_domain_contains(n, &t)? {
            m.push(0.0);
            continue;
        }
        let p = SimplexPoint::new_unchecked(n, t.clone());
        let g = p.g_last();
        if g < BOUNDARY_G {
            continue;
        }
        let w = match weighting {
            Weighting::Lebesgue => 1.0,
            Weighting::InverseSqrtG => g.sqrt().recip(),
        };
        m.push(check_value(volume * w * f(&p), &t)?);
    }
    Ok(m)
}

fn grid_sum<F>(n: usize, f: &F, weighting: Weighting, budget: usize) -> Result<(f64, u64)>
where
    F: Fn(&SimplexPoint) -> f64 + Sync,
{
    let d = n - 2;
    let per_axis = ((budget as f64).powf(1.0 / d as f64) + 1e-9).floor().max(1.0) as usize;
    let total = per_axis.pow(d as u32);
    let cell = 1.0 / per_axis as f64;
    let partial: Vec<Result<f64>> = (0..total)
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|idx| {
            let mut u = vec![0.0; d];
            let mut t = vec![0.0; d];
            let mut s = 0.0;
            for &i in idx {
                let mut rest = i;
                for uk in u.iter_mut() {
                    *uk = (rest % per_axis) as f64 * cell + 0.5 * cell;
                    rest /= per_axis;
                }
                let w = map_unit_cube(n, &u, weighting, &mut t);
                if w == 0.0 {
                    continue;
                }
                let p = SimplexPoint::new_unchecked(n, t.clone());
                if p.g_last() < BOUNDARY_G {
                    continue;
                }
                s += check_value(w * f(&p), &t)?;
            }
            Ok(s)
        })
        .collect();
    let mut sum = 0.0;
    for s in partial {
        sum += s?;
    }
    Ok((sum / total as f64, total as u64))
}

/// A Monte Carlo node with its estimator weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPoint {
    pub point: SimplexPoint,
    pub weight: f64,
}

/// The node set the Monte Carlo rule uses for `(n, weighting, budget, seed)`,
/// for callers that evaluate several integrands on common random numbers.
/// Nodes whose map weight is zero are kept with weight 0 so that averages
/// over the returned set reproduce [`integrate_weighted`].
pub fn weighted_points(n: usize, weighting: Weighting, budget: usize, seed: u64) -> Result<Vec<WeightedPoint>> {
    if n < 3 {
        return Err(Error::Size(format!("n must be at least 3, got {n}")));
    }
    if budget == 0 {
        return Err(Error::Config("integration budget must be positive".into()));
    }
    let d = n - 2;
    let chunks: Vec<Vec<WeightedPoint>> = (0..budget.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let count = CHUNK.min(budget - c * CHUNK);
            let mut rng = seed::rng(seed::derive_seed(seed, c as u64));
            let mut u = vec![0.0; d];
            let mut t = vec![0.0; d];
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                u.iter_mut().for_each(|x| *x = rng.random());
                let w = map_unit_cube(n, &u, weighting, &mut t);
                let point = SimplexPoint::new_unchecked(n, t.clone());
                if w != 0.0 && point.g_last() < BOUNDARY_G {
                    continue;
                }
                out.push(WeightedPoint { point, weight: w });
            }
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// `∫_{B_{n−2}} f(t) w(t) dt` with `w` chosen by `weighting`.
///
/// Results depend only on `(n, method, budget, seed)`: the work is split into
/// fixed chunks with derived seeds and the partial results are merged in order.
pub fn integrate_weighted<F>(
    n: usize,
    integrand: F,
    weighting: Weighting,
    method: IntegrationMethod,
    budget: usize,
    seed: u64,
) -> Result<IntegrationResult>
where
    F: Fn(&SimplexPoint) -> f64 + Sync,
{
    if n < 3 {
        return Err(Error::Size(format!("n must be at least 3, got {n}")));
    }
    if budget == 0 {
        return Err(Error::Config("integration budget must be positive".into()));
    }
    if method == IntegrationMethod::TensorGrid {
        if n > 5 {
            return Err(Error::Unsupported(format!("tensor grid supports n ≤ 5, got {n}")));
        }
        let (value, evaluations) = grid_sum(n, &integrand, weighting, budget)?;
        return Ok(IntegrationResult { value, standard_error: 0.0, evaluations, method });
    }
    let chunks = budget.div_ceil(CHUNK);
    let parts: Vec<Result<Moments>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK.min(budget - c * CHUNK);
            let s = seed::derive_seed(seed, c as u64);
            match method {
                IntegrationMethod::BoxRejection => box_chunk(n, &integrand, weighting, count, s),
                _ => mc_chunk(n, &integrand, weighting, count, s),
            }
        })
        .collect();
    let mut total = Moments::default();
    for p in parts {
        total = total.merge(p?);
    }
    Ok(IntegrationResult {
        value: total.mean,
        standard_error: total.standard_error(),
        evaluations: total.count,
        method,
    })
}

/// `∫_{B_{n−2}} f(t) dt`.
pub fn integrate_over_b<F>(
    n: usize,
    integrand: F,
    method: IntegrationMethod,
    budget: usize,
    seed: u64,
) -> Result<IntegrationResult>
where
    F: Fn(&SimplexPoint) -> f64 + Sync,
{
    integrate_weighted(n, integrand, Weighting::Lebesgue, method, budget, seed)
}

/// Numerical `∫_{B_{n−2}} g_{n−2}^{−1/2} dt`.
pub fn integral_i(n: usize, method: IntegrationMethod, budget: usize, seed: u64) -> Result<IntegrationResult> {
    if budget < 1000 {
        return Err(Error::Config(format!("budget must be at least 1000, got {budget}")));
    }
    integrate_weighted(n, |_| 1.0, Weighting::InverseSqrtG, method, budget, seed)
}

fn inverse_power(u: &BaseFunction, n: usize, t: &[f64]) -> Result<f64> {
    let value = u.degree_one_unchecked(&lambda_tilde(n, t));
    if !(value > 0.0) {
        return Err(Error::Degenerate(format!("U(λ̃) = {value} at t = {t:?}")));
    }
    Ok(value.powi(-(n as i32 - 1)))
}

/// Unnormalized density of `G`: `(1/U(λ̃(t)))^{n−1} g_{n−2}(t)^{−1/2}`.
pub fn g_measure_weight(u: &BaseFunction, n: usize, t: &SimplexPoint) -> Result<f64> {
    if t.n() != n {
        return Err(Error::Size(format!("point belongs to n = {}, asked for n = {n}", t.n())));
    }
    u.check_dimension(n)?;
    let g = t.g_last();
    if g < BOUNDARY_G {
        return Err(Error::Singularity(format!("g = {g:e} at t = {:?}", t.t())));
    }
    Ok(inverse_power(u, n, t.t())? / g.sqrt())
}

/// `(1/U(λ̃))^{n−1}` on `B_{n−2}`, the factor of the `G` weight left after
/// the `g^{−1/2}` part is absorbed by [`Weighting::InverseSqrtG`].
pub(crate) fn g_measure_factor(u: &BaseFunction, n: usize, t: &SimplexPoint) -> f64 {
    inverse_power(u, n, t.t()).unwrap_or(f64::NAN)
}

type CacheKey = (String, usize, usize, u64);

/// Normalizers `M = ∫ (1/U)^{n−1} g^{−1/2} dt`, cached per (statistic, n, budget, seed).
#[derive(Debug, Default)]
pub struct MeasureCache {
    entries: Mutex<HashMap<CacheKey, IntegrationResult>>,
}

impl MeasureCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn normalizer(&self, u: &BaseFunction, n: usize, budget: usize, seed: u64) -> Result<IntegrationResult> {
        u.check_dimension(n)?;
        let key = (format!("{:?}", u.kind()), n, budget, seed);
        if let Some(r) = self.entries.lock().expect("cache lock").get(&key) {
            return Ok(*r);
        }
        let r = integrate_weighted(
            n,
            |p| g_measure_factor(u, n, p),
            Weighting::InverseSqrtG,
            IntegrationMethod::MonteCarlo,
            budget,
            seed,
        )?;
        self.entries.lock().expect("cache lock").insert(key, r);
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_form_examples() {
        assert!((closed_form_i(3).unwrap() - PI / 3.0).abs() < 1e-14);
        assert!((closed_form_i(4).unwrap() - PI / 6.0).abs() < 1e-14);
        assert!((closed_form_i(5).unwrap() - PI * PI / 60.0).abs() < 1e-14);
        assert!(closed_form_i(2).is_err());
        assert!(closed_form_i(100).unwrap() > 0.0);
    }

    #[test]
    fn volume_of_b1() {
        let r = integrate_over_b(3, |_| 1.0, IntegrationMethod::MonteCarlo, 5000, 1).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        let r = integrate_over_b(3, |_| 1.0, IntegrationMethod::BoxRejection, 5000, 1).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn grid_n3_and_n4() {
        let r = integral_i(3, IntegrationMethod::TensorGrid, 10_000, 0).unwrap();
        assert!((r.value - PI / 3.0).abs() < 1e-3);
        assert_eq!(r.standard_error, 0.0);
        let r = integral_i(4, IntegrationMethod::TensorGrid, 250_000, 0).unwrap();
        assert!((r.value - PI / 6.0).abs() < 1e-3, "{r:?}");
        assert!(integral_i(6, IntegrationMethod::TensorGrid, 10_000, 0).is_err());
    }

    #[test]
    fn lemma_constant_small_budget() {
        for n in 3..=6 {
            let r = integral_i(n, IntegrationMethod::MonteCarlo, 100_000, 3).unwrap();
            let exact = closed_form_i(n).unwrap();
            assert!((r.value - exact).abs() <= 4.0 * r.standard_error + 1e-12 * exact, "n={n} {r:?}");
        }
    }

    #[test]
    fn box_rejection_agrees() {
        let r = integral_i(4, IntegrationMethod::BoxRejection, 200_000, 5).unwrap();
        assert!((r.value - PI / 6.0).abs() < 0.02, "{r:?}");
    }

    #[test]
    fn map_lands_in_domain() {
        let mut rng = seed::rng(9);
        for n in 3..=9 {
            let mut t = vec![0.0; n - 2];
            for _ in 0..2000 {
                let u: Vec<f64> = (0..n - 2).map(|_| rng.random()).collect();
                let w = map_unit_cube(n, &u, Weighting::Lebesgue, &mut t);
                assert!(w >= 0.0);
                assert!(b_domain_contains(n, &t).unwrap(), "n={n} t={t:?}");
            }
        }
    }

    #[test]
    fn point_set_matches_integrator() {
        let f = |p: &SimplexPoint| p.t()[0].powi(2) + p.t()[1];
        let pts = weighted_points(5, Weighting::InverseSqrtG, 10_000, 4).unwrap();
        assert_eq!(pts.len(), 10_000);
        let mean = pts.iter().map(|p| p.weight * f(&p.point)).sum::<f64>() / pts.len() as f64;
        let r = integrate_weighted(5, f, Weighting::InverseSqrtG, IntegrationMethod::MonteCarlo, 10_000, 4).unwrap();
        assert!((mean - r.value).abs() < 1e-12 * r.value.abs().max(1.0));
    }

    #[test]
    fn deterministic_for_seed() {
        let a = integral_i(5, IntegrationMethod::MonteCarlo, 20_000, 11).unwrap();
        let b = integral_i(5, IntegrationMethod::MonteCarlo, 20_000, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn non_finite_integrand_reported() {
        let e = integrate_over_b(4, |_| f64::NAN, IntegrationMethod::MonteCarlo, 10, 0).unwrap_err();
        assert!(matches!(e, Error::Integration(ref m) if m.contains("t = ")));
    }

    #[test]
    fn measure_weight_examples() {
        let range = BaseFunction::range();
        let p = SimplexPoint::new(3, vec![-1.0]).unwrap();
        assert!(matches!(g_measure_weight(&range, 3, &p), Err(Error::Singularity(_))));
        let p = SimplexPoint::new(3, vec![-0.75]).unwrap();
        let l = lambda_tilde(3, &[-0.75]);
        let expected = (1.0 / (l[2] - l[0])).powi(2) / 0.4375f64.sqrt();
        assert!((g_measure_weight(&range, 3, &p).unwrap() - expected).abs() < 1e-14);
        let cv = BaseFunction::cv();
        assert!((g_measure_weight(&cv, 3, &p).unwrap() - 1.0 / 0.4375f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn normalizer_cached_and_bounded() {
        let cache = MeasureCache::new();
        let range = BaseFunction::range();
        let m = cache.normalizer(&range, 4, 50_000, 1).unwrap();
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.normalizer(&range, 4, 50_000, 1).unwrap(), m);
        let i = closed_form_i(4).unwrap();
        let b = crate::statistics::estimate_h_bounds(&range, 4, 20, 1).unwrap();
        let (lo, hi) = (i * b.upper.powi(-3), i * b.lower.powi(-3));
        assert!(m.value >= lo * (1.0 - 1e-9) && m.value <= hi * (1.0 + 1e-9), "{lo} {} {hi}", m.value);
        // G normalized integrates to 1
        let total = integrate_over_b(
            4,
            |p| g_measure_weight(&range, 4, p).unwrap_or(0.0) / m.value,
            IntegrationMethod::MonteCarlo,
            50_000,
            1,
        )
        .unwrap();
        assert!((total.value - 1.0).abs() < 3.0 * total.standard_error + 0.02, "{total:?}");
    }
}
