//! Globally adaptive Gauss–Kronrod (7/15) quadrature on intervals and half-lines.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineIntegral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rule<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    if !fc.is_finite() {
        return Err(Error::Integration(format!("integrand is {fc} at {center}")));
    }
    for j in 0..7 {
        let dx = half * XGK[j];
        // nodes that round onto an endpoint carry no weight in exact arithmetic
        let node = |x: f64| if x <= a || x >= b { 0.0 } else { f(x) };
        let (f1, f2) = (node(center - dx), node(center + dx));
        if !f1.is_finite() || !f2.is_finite() {
            return Err(Error::Integration(format!(
                "integrand is not finite near {center} ± {dx}"
            )));
        }
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Ok(Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<LineIntegral> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::Integration(format!("bad interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(LineIntegral {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut heap = BinaryHeap::new();
    let first = rule(&f, a, b)?;
    let (mut value, mut error) = (first.value, first.error);
    heap.push(first);
    let mut evaluations = 15;
    // segments too narrow to split further (endpoint singularities)
    let mut frozen: Vec<Segment> = Vec::new();
    let min_width = 1e-12 * (b - a);
    let mut frozen_error = 0.0;
    while error - frozen_error > rel_tol * value.abs() && error > 1e-300 && !heap.is_empty() {
        if heap.len() + frozen.len() >= MAX_SEGMENTS {
            return Err(Error::Integration(format!(
                "no convergence on [{a}, {b}]: estimate {value}, error {error}"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.b - worst.a < min_width {
            frozen_error += worst.error;
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = rule(&f, worst.a, mid)?;
        let right = rule(&f, mid, worst.b)?;
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum from the segments to shed the drift of the running updates
    let mut segs: Vec<Segment> = heap.into_vec();
    segs.extend(frozen);
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = segs.iter().map(|s| s.value).sum();
    let error = segs.iter().map(|s| s.error).sum();
    Ok(LineIntegral {
        value,
        error,
        evaluations,
    })
}

/// Integrates `f` over `[a, ∞)` through `x = a + scale·u/(1−u)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    scale: f64,
    rel_tol: f64,
) -> Result<LineIntegral> {
    if !(scale > 0.0) {
        return Err(Error::Integration(format!("scale must be positive, got {scale}")));
    }
    integrate(
        |u| {
            let w = 1.0 - u;
            let x = a + scale * u / w;
            if x.is_infinite() {
                return 0.0;
            }
            let fx = f(x);
            if fx == 0.0 {
                0.0
            } else {
                fx * scale / (w * w)
            }
        },
        0.0,
        1.0,
        rel_tol,
    )
}
