//! Coordinates for sorted samples: the nested domain `B_{n−2}`, the
//! Studentized transforms `T1*` / `T2*` with their inverses, and the
//! Jacobian of `T2*`.
//!
//! A sorted sample `x_(1) ≤ … ≤ x_(n)` with mean `w1` and deviation `w2`
//! is described by `t ∈ B_{n−2}` plus `(w1, w2)`; the unit profile
//! `λ̃(t) = (x − w1)/w2` lies on `A_n = {sorted, Σλ = 0, Σλ² = n − 1}`.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;
use crate::statistics::OrderedSample;

/// Closed-bound slack for membership checks.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// `g_{n−2}` below this value counts as the boundary of `B_{n−2}`.
pub const BOUNDARY_G: f64 = 1e-14;

/// A point of `B_{n−2}` with cached `g_k = 1 − Σ_{i≤k} t_i²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    n: usize,
    t: Vec<f64>,
    g: Vec<f64>,
}

fn cumulative_g(t: &[f64]) -> Vec<f64> {
    let mut acc = 1.0;
    t.iter()
        .map(|ti| {
            acc -= ti * ti;
            acc
        })
        .collect()
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::Size(format!("n must be at least 3, got {n}")))
    } else {
        Ok(())
    }
}

impl SimplexPoint {
    /// Validated constructor; fails with a domain error outside `B_{n−2}`.
    pub fn new(n: usize, t: Vec<f64>) -> Result<Self> {
        if !b_domain_contains(n, &t)? {
            return Err(Error::Domain(format!("t = {t:?} is outside B_{}", n - 2)));
        }
        Ok(Self::new_unchecked(n, t))
    }

    pub(crate) fn new_unchecked(n: usize, t: Vec<f64>) -> Self {
        let g = cumulative_g(&t);
        SimplexPoint { n, t, g }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    /// `g_{n−2}(t)`.
    pub fn g_last(&self) -> f64 {
        *self.g.last().expect("n >= 3 gives at least one coordinate")
    }

    pub fn is_boundary(&self) -> bool {
        self.g_last() < BOUNDARY_G
    }

    /// `n,t1,…,t_{n−2}` for experiment dumps.
    pub fn to_csv_row(&self) -> String {
        let mut row = self.n.to_string();
        for t in &self.t {
            row.push(',');
            row.push_str(&t.to_string());
        }
        row
    }
}

/// `g_k = 1 − Σ_{i≤k} t_i²`.
pub fn g_value(prefix: &[f64], k: usize) -> Result<f64> {
    if k > prefix.len() {
        return Err(Error::Size(format!("k = {k} exceeds prefix length {}", prefix.len())));
    }
    Ok(1.0 - prefix[..k].iter().map(|t| t * t).sum::<f64>())
}

/// Bounds `[lo, hi]` for coordinate `t_k` (1-based) given `t_{k−1}` and `g_{k−1}`.
pub fn coordinate_bounds(n: usize, k: usize, t_prev: f64, g_prev: f64) -> (f64, f64) {
    let nf = n as f64;
    if k == 1 {
        return (-1.0, -1.0 / (nf - 1.0));
    }
    let kf = k as f64;
    let root = g_prev.max(0.0).sqrt();
    let lo = (((nf - kf + 2.0) / (nf - kf)).sqrt() * t_prev).max(-root);
    let hi = -root / (nf - kf);
    (lo, hi)
}

/// Whether `t` satisfies every nested inequality of `B_{n−2}` (closed bounds).
pub fn b_domain_contains(n: usize, t: &[f64]) -> Result<bool> {
    check_n(n)?;
    if t.len() != n - 2 {
        return Err(Error::Size(format!("expected {} coordinates, got {}", n - 2, t.len())));
    }
    let mut g_prev = 1.0;
    let mut t_prev = 0.0;
    for (i, &tk) in t.iter().enumerate() {
        if !tk.is_finite() {
            return Ok(false);
        }
        let (lo, hi) = coordinate_bounds(n, i + 1, t_prev, g_prev);
        if tk < lo - MEMBERSHIP_TOL || tk > hi + MEMBERSHIP_TOL {
            return Ok(false);
        }
        g_prev -= tk * tk;
        t_prev = tk;
    }
    Ok(g_prev >= -MEMBERSHIP_TOL)
}

/// Moves `t` onto `B_{n−2}` coordinate by coordinate.
pub fn clamp_to_b(n: usize, t: &mut [f64]) {
    let mut g_prev = 1.0;
    let mut t_prev = 0.0;
    for (i, tk) in t.iter_mut().enumerate() {
        let (lo, hi) = coordinate_bounds(n, i + 1, t_prev, g_prev);
        let lo = lo.min(hi);
        *tk = tk.clamp(lo, hi);
        g_prev -= *tk * *tk;
        t_prev = *tk;
    }
}

/// `λ̃(t)` without domain checks. `g_{n−2}` is floored at zero.
pub fn lambda_tilde(n: usize, t: &[f64]) -> Vec<f64> {
    let nf = n as f64;
    let scale = (nf - 1.0).sqrt();
    let mut lambda = Vec::with_capacity(n);
    let mut shift = 0.0;
    let mut g = 1.0;
    for (i, &ti) in t.iter().enumerate() {
        let r = nf - (i as f64 + 1.0);
        lambda.push(scale * ((r / (r + 1.0)).sqrt() * ti - shift));
        shift += ti / (r * (r + 1.0)).sqrt();
        g -= ti * ti;
    }
    let tail = (0.5 * g.max(0.0)).sqrt();
    lambda.push(scale * (-shift - tail));
    lambda.push(scale * (-shift + tail));
    lambda
}

/// The unit profile `λ̃(t)`: sorted, zero-sum, `Σλ̃² = n − 1`.
pub fn lambda_from_t(n: usize, t: &SimplexPoint) -> Result<Vec<f64>> {
    if t.n != n {
        return Err(Error::Size(format!("point belongs to n = {}, asked for n = {n}", t.n)));
    }
    if !b_domain_contains(n, &t.t)? {
        return Err(Error::Domain(format!("t = {:?} is outside B_{}", t.t, n - 2)));
    }
    Ok(lambda_tilde(n, &t.t))
}

/// `t` coordinates of a unit profile `λ` (zero-sum, `Σλ² = n − 1`).
pub fn t_from_lambda(lambda: &[f64]) -> Vec<f64> {
    let n = lambda.len();
    let nf = n as f64;
    let mut prefix = 0.0;
    let mut t = Vec::with_capacity(n.saturating_sub(2));
    for (i, &li) in lambda.iter().take(n - 2).enumerate() {
        let r = nf - i as f64; // n − i + 1 with 1-based i
        let c = (r / ((nf - 1.0) * (r - 1.0))).sqrt();
        t.push(c * (li + prefix / r));
        prefix += li;
    }
    t
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct T1Coords {
    pub t: SimplexPoint,
    /// Sample mean.
    pub w1: f64,
    /// Sample deviation.
    pub w2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct T2Coords {
    pub t: SimplexPoint,
    /// Sample mean.
    pub w1: f64,
    /// Sample coefficient of variation `w2 / w1`.
    pub w3: f64,
}

/// `T1*: x ↦ (t, x̄, s)`.
pub fn t1_forward(s: &OrderedSample) -> Result<T1Coords> {
    let n = s.n();
    check_n(n)?;
    if s.is_degenerate() {
        return Err(Error::Degenerate("constant sample has no Studentized coordinates".into()));
    }
    let lambda: Vec<f64> = s.deviations().iter().map(|d| d / s.sd()).collect();
    Ok(T1Coords {
        t: SimplexPoint::new_unchecked(n, t_from_lambda(&lambda)),
        w1: s.mean(),
        w2: s.sd(),
    })
}

/// `(T1*)⁻¹: (t, w1, w2) ↦ x` with `x_(i) = w1 + w2·λ̃_i(t)`.
pub fn t1_inverse(t: &SimplexPoint, w1: f64, w2: f64) -> Result<OrderedSample> {
    if !(w1 > 0.0 && w1.is_finite()) {
        return Err(Error::Parameter(format!("w1 must be positive, got {w1}")));
    }
    if !(w2 >= 0.0 && w2.is_finite()) {
        return Err(Error::Parameter(format!("w2 must be nonnegative, got {w2}")));
    }
    let lambda = lambda_from_t(t.n, t)?;
    let mut x: Vec<f64> = lambda.iter().map(|l| w1 + w2 * l).collect();
    if x[0] <= 0.0 {
        return Err(Error::Support(format!(
            "x_(1) = {} is not positive; w2 = {w2} is too large for w1 = {w1}",
            x[0]
        )));
    }
    // ties on the boundary of B can come out one ulp out of order
    for i in 1..x.len() {
        if x[i] < x[i - 1] {
            x[i] = x[i - 1];
        }
    }
    OrderedSample::from_sorted(x)
}

/// `T2*: x ↦ (t, x̄, s/x̄)`.
pub fn t2_forward(s: &OrderedSample) -> Result<T2Coords> {
    let T1Coords { t, w1, w2 } = t1_forward(s)?;
    Ok(T2Coords { t, w1, w3: w2 / w1 })
}

/// Membership in the image set `R*_n` of `T2*`.
pub fn r_star_contains(n: usize, t: &[f64], w1: f64, w3: f64) -> Result<bool> {
    if !b_domain_contains(n, t)? {
        return Ok(false);
    }
    let nf = n as f64;
    if !(w1 > 0.0 && w3 > 0.0 && w3 <= nf.sqrt() * (1.0 + MEMBERSHIP_TOL)) {
        return Ok(false);
    }
    let floor = (-1.0f64).max(-nf.sqrt() / ((nf - 1.0) * w3));
    Ok(t[0] >= floor - MEMBERSHIP_TOL)
}

/// `|J₂*| = √n (n−1)^{(n−1)/2} w1^{n−1} w3^{n−2} g_{n−2}^{−1/2}`.
pub fn jacobian_t2(n: usize, w1: f64, w3: f64, t: &SimplexPoint) -> Result<f64> {
    check_n(n)?;
    if t.n != n {
        return Err(Error::Size(format!("point belongs to n = {}, asked for n = {n}", t.n)));
    }
    if !(w1 > 0.0 && w3 > 0.0) {
        return Err(Error::Parameter(format!("need w1 > 0 and w3 > 0, got ({w1}, {w3})")));
    }
    let g = t.g_last();
    if g < BOUNDARY_G {
        return Err(Error::Singularity(format!("g_{} = {g:e} at t = {:?}", n - 2, t.t)));
    }
    let nf = n as f64;
    let log = 0.5 * nf.ln() + 0.5 * (nf - 1.0) * (nf - 1.0).ln() + (nf - 1.0) * w1.ln()
        + (nf - 2.0) * w3.ln()
        - 0.5 * g.ln();
    Ok(log.exp())
}

/// `(t_1, …, t_{n−2}, w1, w3) ↦ x` with `x_(i) = w1 (1 + w3 λ̃_i(t))`, unchecked.
pub fn t2_inverse_map(n: usize) -> impl Fn(&[f64]) -> Vec<f64> {
    move |p: &[f64]| {
        let (t, w) = p.split_at(n - 2);
        let (w1, w3) = (w[0], w[1]);
        lambda_tilde(n, t)
            .into_iter()
            .map(|l| w1 * (1.0 + w3 * l))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobianEstimate {
    pub abs_det: f64,
    /// Set when the difference matrix is numerically singular; `abs_det` is then 0.
    pub singular: bool,
}

/// `|det|` of the central-difference Jacobian of `map` at `point`, with
/// step `1e-6·max(1, |p_j|)` per coordinate.
pub fn numerical_jacobian<F>(map: F, point: &[f64]) -> Result<JacobianEstimate>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let dim = point.len();
    let base = map(point);
    if base.len() != dim {
        return Err(Error::Size(format!(
            "map must be square: {dim} inputs, {} outputs",
            base.len()
        )));
    }
    let mut jac = DMatrix::zeros(dim, dim);
    let mut p = point.to_vec();
    for j in 0..dim {
        let h = 1e-6 * point[j].abs().max(1.0);
        p[j] = point[j] + h;
        let up = map(&p);
        p[j] = point[j] - h;
        let down = map(&p);
        p[j] = point[j];
        let step = (point[j] + h) - (point[j] - h);
        for i in 0..dim {
            let d = (up[i] - down[i]) / step;
            if !d.is_finite() {
                return Err(Error::Domain(format!("map is not finite near {point:?}")));
            }
            jac[(i, j)] = d;
        }
    }
    let det = jac.clone().lu().determinant();
    let scale: f64 = jac
        .column_iter()
        .map(|c| c.norm())
        .product::<f64>()
        .max(f64::MIN_POSITIVE);
    if det == 0.0 || det.abs() < 1e-13 * scale {
        return Ok(JacobianEstimate {
            abs_det: 0.0,
            singular: true,
        });
    }
    Ok(JacobianEstimate {
        abs_det: det.abs(),
        singular: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BSample {
    pub points: Vec<SimplexPoint>,
    /// Accepted fraction of box draws.
    pub acceptance_rate: f64,
    /// Volume of the sampling box.
    pub box_volume: f64,
    pub draws: u64,
}

impl BSample {
    /// Acceptance rate times box volume: a volume estimate for `B_{n−2}`.
    pub fn volume_estimate(&self) -> f64 {
        self.acceptance_rate * self.box_volume
    }
}

/// Box containing `B_{n−2}`: `[−1, −1/(n−1)] × [−1, 0]^{n−3}`.
pub fn bounding_box(n: usize) -> Vec<(f64, f64)> {
    let mut b = vec![(-1.0, -1.0 / (n as f64 - 1.0))];
    b.extend(std::iter::repeat_n((-1.0, 0.0), n - 3));
    b
}

/// Uniform points on `B_{n−2}` by rejection from [`bounding_box`].
pub fn sample_b_domain(n: usize, count: usize, seed: u64) -> Result<BSample> {
    check_n(n)?;
    let bx = bounding_box(n);
    let box_volume: f64 = bx.iter().map(|(lo, hi)| hi - lo).product();
    let mut rng = seed::rng(seed);
    let mut points = Vec::with_capacity(count);
    let mut draws = 0u64;
    let mut t = vec![0.0; n - 2];
    while points.len() < count {
        draws += 1;
        for (tk, (lo, hi)) in t.iter_mut().zip(&bx) {
            *tk = lo + (hi - lo) * rng.random::<f64>();
        }
        if b_domain_contains(n, &t)? {
            points.push(SimplexPoint::new_unchecked(n, t.clone()));
        }
    }
    Ok(BSample {
        points,
        acceptance_rate: if draws == 0 { 1.0 } else { count as f64 / draws as f64 },
        box_volume,
        draws,
    })
}
