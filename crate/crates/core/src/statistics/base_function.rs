//! The catalog of base functions `U(λ)` on the ordered zero-sum set
//! `A = {λ_1 ≤ … ≤ λ_n, Σλ_i = 0}` and the statistics built from them.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::sample::OrderedSample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum BaseKind {
    /// `λ_n − λ_1`.
    Range,
    /// `Σ a_i λ_i` with `a_1 ≤ … ≤ a_n`, not all equal.
    WeightedLinear(Vec<f64>),
    /// `Σ a_i |λ_i|^p`.
    WeightedPower { p: f64, weights: Vec<f64> },
    /// `Σ_i Σ_j a_ij |λ_i − λ_j|^p`.
    PairwisePower { p: f64, weights: DMatrix<f64> },
    /// Gini's mean difference in its linear order-statistic form.
    Gini,
    /// `λᵀ A λ` with `A` symmetrized and positive definite.
    QuadraticForm(DMatrix<f64>),
    /// `Σ_i Σ_j a_ij |λ_i|^p |λ_j|^q`.
    MixedPower { p: f64, q: f64, weights: DMatrix<f64> },
    /// `(Σ λ_i² / (n − 1))^{1/2}`, the sample deviation.
    CoefficientOfVariationCore,
}

/// A feasible definite function together with its degree of homogeneity.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseFunction {
    kind: BaseKind,
    label: String,
    notes: Vec<String>,
}

fn finite_all(name: &str, xs: &[f64]) -> Result<()> {
    match xs.iter().find(|x| !x.is_finite()) {
        Some(x) => Err(Error::Parameter(format!("{name}: coefficient {x} is not finite"))),
        None => Ok(()),
    }
}

fn check_exponent(name: &str, p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be positive, got {p}")))
    }
}

fn check_square(name: &str, m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() < 2 {
        return Err(Error::Parameter(format!(
            "{name}: expected a square matrix of size >= 2, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    finite_all(name, m.as_slice())
}

fn check_nonnegative(name: &str, xs: &[f64]) -> Result<()> {
    match xs.iter().find(|x| **x < 0.0) {
        Some(x) => Err(Error::Parameter(format!("{name}: coefficient {x} is negative"))),
        None => Ok(()),
    }
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl BaseFunction {
    pub fn range() -> Self {
        Self::raw(BaseKind::Range)
    }

    pub fn gini() -> Self {
        Self::raw(BaseKind::Gini)
    }

    pub fn cv() -> Self {
        Self::raw(BaseKind::CoefficientOfVariationCore)
    }

    pub fn weighted_linear(a: Vec<f64>) -> Result<Self> {
        finite_all("wlin", &a)?;
        if a.len() < 2 {
            return Err(Error::Parameter("wlin needs at least two coefficients".into()));
        }
        if a.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Parameter("wlin coefficients must be nondecreasing".into()));
        }
        if a.iter().all(|x| *x == a[0]) {
            return Err(Error::Parameter(
                "wlin coefficients must not all coincide (the statistic vanishes identically)".into(),
            ));
        }
        Ok(Self::raw(BaseKind::WeightedLinear(a)))
    }

    pub fn weighted_power(p: f64, weights: Vec<f64>) -> Result<Self> {
        check_exponent("wpow exponent", p)?;
        finite_all("wpow", &weights)?;
        check_nonnegative("wpow", &weights)?;
        let n = weights.len();
        if n < 2 || !(weights[0] > 0.0 && weights[n - 1] > 0.0) {
            return Err(Error::Parameter(
                "wpow needs at least two weights with a_1 > 0 and a_n > 0".into(),
            ));
        }
        Ok(Self::raw(BaseKind::WeightedPower { p, weights }))
    }

    pub fn pairwise_power(p: f64, weights: DMatrix<f64>) -> Result<Self> {
        check_exponent("pairpow exponent", p)?;
        check_square("pairpow", &weights)?;
        check_nonnegative("pairpow", weights.as_slice())?;
        let n = weights.nrows();
        if !(weights[(0, n - 1)] + weights[(n - 1, 0)] > 0.0) {
            return Err(Error::Parameter("pairpow needs a_{1,n} + a_{n,1} > 0".into()));
        }
        Ok(Self::raw(BaseKind::PairwisePower { p, weights }))
    }

    /// Symmetrizes `a` as `(A + Aᵀ)/2` and requires the result to be positive definite.
    pub fn quadratic_form(a: DMatrix<f64>) -> Result<Self> {
        check_square("quad", &a)?;
        let sym = (&a + a.transpose()) * 0.5;
        if sym.clone().cholesky().is_none() {
            return Err(Error::Parameter("quad matrix is not positive definite".into()));
        }
        let mut f = Self::raw(BaseKind::QuadraticForm(sym.clone()));
        if sym != a {
            f.notes
                .push("quadratic-form matrix was not symmetric; replaced by (A + Aᵀ)/2".into());
        }
        Ok(f)
    }

    pub fn mixed_power(p: f64, q: f64, weights: DMatrix<f64>) -> Result<Self> {
        check_exponent("mixed exponent p", p)?;
        check_exponent("mixed exponent q", q)?;
        check_square("mixed", &weights)?;
        check_nonnegative("mixed", weights.as_slice())?;
        let n = weights.nrows();
        if !(weights[(0, 0)] > 0.0 && weights[(n - 1, n - 1)] > 0.0) {
            return Err(Error::Parameter("mixed needs a_11 > 0 and a_nn > 0".into()));
        }
        Ok(Self::raw(BaseKind::MixedPower { p, q, weights }))
    }

    /// Wraps `kind` with no coefficient validation. Used to probe candidate
    /// functions with [`validate_feasibility`](super::validate_feasibility).
    pub fn raw(kind: BaseKind) -> Self {
        let label = default_label(&kind);
        BaseFunction {
            kind,
            label,
            notes: Vec::new(),
        }
    }

    /// Pairwise power with `p = 1`, `a_ij = 1/(n(n−1))`: Gini's mean difference.
    pub fn gini_pairwise(n: usize) -> Result<Self> {
        let w = 1.0 / (n as f64 * (n as f64 - 1.0));
        Self::pairwise_power(1.0, DMatrix::from_element(n, n, w))
    }

    /// Weighted power with `p = 2`, `a_i = 1/(n−1)`: the sample variance.
    pub fn sample_variance(n: usize) -> Result<Self> {
        Self::weighted_power(2.0, vec![1.0 / (n as f64 - 1.0); n])
    }

    /// Weighted linear with `a = (−1, 0, …, 0, 1)`: the sample range.
    pub fn range_as_linear(n: usize) -> Result<Self> {
        let mut a = vec![0.0; n];
        a[0] = -1.0;
        a[n - 1] = 1.0;
        Self::weighted_linear(a)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn kind(&self) -> &BaseKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Remarks produced at construction time (e.g. matrix symmetrization).
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Degree `p` of positive homogeneity: `U(sλ) = s^p U(λ)`.
    pub fn h_degree(&self) -> f64 {
        match &self.kind {
            BaseKind::Range
            | BaseKind::WeightedLinear(_)
            | BaseKind::Gini
            | BaseKind::CoefficientOfVariationCore => 1.0,
            BaseKind::WeightedPower { p, .. } | BaseKind::PairwisePower { p, .. } => *p,
            BaseKind::QuadraticForm(_) => 2.0,
            BaseKind::MixedPower { p, q, .. } => p + q,
        }
    }

    /// Sample size the coefficients are tied to, if any.
    pub fn dimension(&self) -> Option<usize> {
        match &self.kind {
            BaseKind::Range | BaseKind::Gini | BaseKind::CoefficientOfVariationCore => None,
            BaseKind::WeightedLinear(a) => Some(a.len()),
            BaseKind::WeightedPower { weights, .. } => Some(weights.len()),
            BaseKind::PairwisePower { weights, .. } | BaseKind::MixedPower { weights, .. } => {
                Some(weights.nrows())
            }
            BaseKind::QuadraticForm(a) => Some(a.nrows()),
        }
    }

    pub fn check_dimension(&self, n: usize) -> Result<()> {
        match self.dimension() {
            Some(d) if d != n => Err(Error::Size(format!(
                "statistic {} has coefficients for n = {d}, sample has n = {n}",
                self.label
            ))),
            _ if n < 2 => Err(Error::Size(format!("need n >= 2, got {n}"))),
            _ => Ok(()),
        }
    }

    /// The formula itself, without membership checks or clamping.
    pub fn raw_value(&self, lambda: &[f64]) -> f64 {
        let n = lambda.len();
        match &self.kind {
            BaseKind::Range => lambda[n - 1] - lambda[0],
            BaseKind::WeightedLinear(a) => a.iter().zip(lambda).map(|(a, l)| a * l).sum(),
            BaseKind::WeightedPower { p, weights } => weights
                .iter()
                .zip(lambda)
                .filter(|(a, _)| **a != 0.0)
                .map(|(a, l)| a * l.abs().powf(*p))
                .sum(),
            BaseKind::PairwisePower { p, weights } => {
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        let a = weights[(i, j)];
                        if a != 0.0 {
                            s += a * (lambda[i] - lambda[j]).abs().powf(*p);
                        }
                    }
                }
                s
            }
            BaseKind::Gini => {
                let nf = n as f64;
                let c = 0.5 * (nf + 1.0);
                let s: f64 = lambda
                    .iter()
                    .enumerate()
                    .map(|(i, l)| (i as f64 + 1.0 - c) * l)
                    .sum();
                4.0 * s / (nf * (nf - 1.0))
            }
            BaseKind::QuadraticForm(a) => {
                let mut s = 0.0;
                for i in 0..n {
                    let mut row = 0.0;
                    for j in 0..n {
                        row += a[(i, j)] * lambda[j];
                    }
                    s += lambda[i] * row;
                }
                s
            }
            BaseKind::MixedPower { p, q, weights } => {
                let lp: Vec<f64> = lambda.iter().map(|l| l.abs().powf(*p)).collect();
                let lq: Vec<f64> = lambda.iter().map(|l| l.abs().powf(*q)).collect();
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        let a = weights[(i, j)];
                        if a != 0.0 {
                            s += a * lp[i] * lq[j];
                        }
                    }
                }
                s
            }
            BaseKind::CoefficientOfVariationCore => {
                (lambda.iter().map(|l| l * l).sum::<f64>() / (n as f64 - 1.0)).sqrt()
            }
        }
    }

    /// An upper bound on `|U(λ)|` built from absolute values, used as the
    /// scale for rounding tolerances.
    pub fn envelope(&self, lambda: &[f64]) -> f64 {
        let n = lambda.len();
        match &self.kind {
            BaseKind::Range => lambda[n - 1].abs() + lambda[0].abs(),
            BaseKind::WeightedLinear(a) => a.iter().zip(lambda).map(|(a, l)| (a * l).abs()).sum(),
            BaseKind::Gini => {
                let nf = n as f64;
                let c = 0.5 * (nf + 1.0);
                let s: f64 = lambda
                    .iter()
                    .enumerate()
                    .map(|(i, l)| ((i as f64 + 1.0 - c) * l).abs())
                    .sum();
                4.0 * s / (nf * (nf - 1.0))
            }
            BaseKind::QuadraticForm(a) => {
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        s += (a[(i, j)] * lambda[i] * lambda[j]).abs();
                    }
                }
                s
            }
            _ => self.raw_value(lambda).abs(),
        }
    }

    /// Clamps rounding-level negatives of the linear kinds to zero.
    fn clamp(&self, lambda: &[f64], v: f64) -> f64 {
        if v < 0.0 && v >= -1e-12 * self.envelope(lambda) {
            0.0
        } else {
            v
        }
    }

    /// `U(λ)` for `λ ∈ A`.
    pub fn evaluate(&self, lambda: &[f64]) -> Result<f64> {
        self.check_dimension(lambda.len())?;
        check_in_a(lambda)?;
        Ok(self.clamp(lambda, self.raw_value(lambda)))
    }

    /// `U(λ)^{1/p}`, the h-degree-1 version.
    pub fn evaluate_degree_one(&self, lambda: &[f64]) -> Result<f64> {
        Ok(self.to_degree_one(self.evaluate(lambda)?))
    }

    pub(crate) fn degree_one_unchecked(&self, lambda: &[f64]) -> f64 {
        self.to_degree_one(self.clamp(lambda, self.raw_value(lambda)))
    }

    fn to_degree_one(&self, z: f64) -> f64 {
        let p = self.h_degree();
        if p == 1.0 {
            z
        } else if p == 2.0 {
            z.sqrt()
        } else {
            z.powf(1.0 / p)
        }
    }
}

/// Membership in `A`: nondecreasing and zero-sum, to `1e-12·max|λ|`.
pub fn check_in_a(lambda: &[f64]) -> Result<()> {
    if lambda.len() < 2 {
        return Err(Error::Size(format!("λ needs at least 2 entries, got {}", lambda.len())));
    }
    if lambda.iter().any(|l| !l.is_finite()) {
        return Err(Error::Domain("λ has non-finite entries".into()));
    }
    let scale = lambda.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let tol = 1e-12 * scale;
    if lambda.windows(2).any(|w| w[1] < w[0] - tol) {
        return Err(Error::Domain("λ is not nondecreasing".into()));
    }
    let sum: f64 = lambda.iter().sum();
    if sum.abs() > tol {
        return Err(Error::Domain(format!("λ does not sum to zero (sum = {sum:e})")));
    }
    Ok(())
}

/// `U(λ)` for `λ ∈ A`.
pub fn evaluate_base_function(u: &BaseFunction, lambda: &[f64]) -> Result<f64> {
    u.evaluate(lambda)
}

/// `Z_n = U(x_(1) − x̄, …, x_(n) − x̄)`.
pub fn feasible_statistic(u: &BaseFunction, s: &OrderedSample) -> Result<f64> {
    u.check_dimension(s.n())?;
    let dev = s.deviations();
    Ok(u.clamp(&dev, u.raw_value(&dev)))
}

/// `Z_n^{1/p}`; equal to `Z_n` when `p = 1`.
pub fn degree_one_statistic(u: &BaseFunction, s: &OrderedSample) -> Result<f64> {
    Ok(u.to_degree_one(feasible_statistic(u, s)?))
}

/// Gini's mean difference as `(pairwise form, linear order-statistic form)`.
pub fn gini_mean_difference(s: &OrderedSample) -> (f64, f64) {
    let x = s.values();
    let n = x.len();
    let nf = n as f64;
    let norm = nf * (nf - 1.0);
    let mut pair = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            pair += (x[j] - x[i]).abs();
        }
    }
    let c = 0.5 * (nf + 1.0);
    let lin: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (i as f64 + 1.0 - c) * v)
        .sum();
    (2.0 * pair / norm, 4.0 * lin / norm)
}

fn default_label(kind: &BaseKind) -> String {
    let shape = |m: &DMatrix<f64>| format!("<{}x{} matrix>", m.nrows(), m.ncols());
    match kind {
        BaseKind::Range => "range".into(),
        BaseKind::Gini => "gini".into(),
        BaseKind::CoefficientOfVariationCore => "cv".into(),
        BaseKind::WeightedLinear(a) => format!("wlin:{}", fmt_list(a)),
        BaseKind::WeightedPower { p, weights } => format!("wpow:{p};{}", fmt_list(weights)),
        BaseKind::PairwisePower { p, weights } => format!("pairpow:{p};{}", shape(weights)),
        BaseKind::QuadraticForm(a) => format!("quad:{}", shape(a)),
        BaseKind::MixedPower { p, q, weights } => format!("mixed:{p},{q};{}", shape(weights)),
    }
}

impl fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl Serialize for BaseFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label)
    }
}

impl<'de> Deserialize<'de> for BaseFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reads a plain CSV matrix (no header, one row per line).
pub fn read_matrix_csv(path: &Path) -> Result<DMatrix<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_matrix_csv(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_matrix_csv(text: &str) -> Result<DMatrix<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let row = record
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| Error::Parse(format!("bad matrix entry {f:?}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("matrix must be square and non-empty".into()));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number {x:?}")))
        })
        .collect()
}

fn parse_num(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

impl BaseFunction {
    /// Parses a textual statistic spec, resolving matrix file paths against `base_dir`.
    ///
    /// Forms: `range`, `gini`, `cv`, `wlin:a1,…,an`, `wpow:p;a1,…,an`,
    /// `pairpow:p;FILE`, `quad:FILE`, `mixed:p,q;FILE`.
    pub fn parse_in(spec: &str, base_dir: Option<&Path>) -> Result<Self> {
        let spec = spec.trim();
        let (head, rest) = match spec.split_once(':') {
            Some((h, r)) => (h.trim().to_ascii_lowercase(), Some(r.trim())),
            None => (spec.to_ascii_lowercase(), None),
        };
        let args = rest.filter(|r| !r.is_empty());
        let need = || args.ok_or_else(|| Error::Parse(format!("statistic {spec:?} is missing its arguments")));
        let matrix = |file: &str| {
            let p = Path::new(file.trim());
            let p = match base_dir {
                Some(d) if p.is_relative() => d.join(p),
                _ => p.to_path_buf(),
            };
            read_matrix_csv(&p)
        };
        let split2 = |r: &str| {
            r.split_once(';')
                .ok_or_else(|| Error::Parse(format!("statistic {spec:?}: expected ';' separator")))
                .map(|(a, b)| (a.to_string(), b.to_string()))
        };
        let f = match head.as_str() {
            "range" => BaseFunction::range(),
            "gini" => BaseFunction::gini(),
            "cv" | "sd" => BaseFunction::cv(),
            "wlin" => BaseFunction::weighted_linear(parse_list(need()?)?)?,
            "wpow" => {
                let (p, a) = split2(need()?)?;
                BaseFunction::weighted_power(parse_num(&p)?, parse_list(&a)?)?
            }
            "pairpow" => {
                let (p, file) = split2(need()?)?;
                BaseFunction::pairwise_power(parse_num(&p)?, matrix(&file)?)?
            }
            "quad" => BaseFunction::quadratic_form(matrix(need()?)?)?,
            "mixed" => {
                let (pq, file) = split2(need()?)?;
                let pq = parse_list(&pq)?;
                if pq.len() != 2 {
                    return Err(Error::Parse(format!("statistic {spec:?}: expected p,q")));
                }
                BaseFunction::mixed_power(pq[0], pq[1], matrix(&file)?)?
            }
            other => return Err(Error::Parse(format!("unknown statistic {other:?}"))),
        };
        Ok(match f.kind {
            BaseKind::Range | BaseKind::Gini | BaseKind::CoefficientOfVariationCore => f,
            _ => f.with_label(spec),
        })
    }
}

impl FromStr for BaseFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(s, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(x: &[f64]) -> OrderedSample {
        OrderedSample::new(x).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(BaseFunction::range().evaluate(&[-1.0, 0.0, 1.0]).unwrap(), 2.0);
        let wpow = BaseFunction::sample_variance(3).unwrap();
        assert!((wpow.evaluate(&[-1.0, 0.0, 1.0]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn evaluate_rejects_points_outside_a() {
        let r = BaseFunction::range();
        assert!(matches!(r.evaluate(&[1.0, 0.0, -1.0]), Err(Error::Domain(_))));
        assert!(matches!(r.evaluate(&[-1.0, 0.0, 1.5]), Err(Error::Domain(_))));
        let w = BaseFunction::weighted_linear(vec![-1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(w.evaluate(&[-1.0, 0.0, 0.5, 0.5]), Err(Error::Size(_))));
        assert_eq!(r.evaluate(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn statistic_examples() {
        let s = sample(&[1.0, 2.0, 4.0]);
        assert_eq!(feasible_statistic(&BaseFunction::range(), &s).unwrap(), 3.0);
        let wlin = BaseFunction::weighted_linear(vec![-1.0, 0.0, 1.0]).unwrap();
        assert!((feasible_statistic(&wlin, &s).unwrap() - 3.0).abs() < 1e-15);
        assert!((feasible_statistic(&BaseFunction::gini(), &s).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn degree_one_examples() {
        let s = sample(&[1.0, 2.0, 4.0]);
        let v = degree_one_statistic(&BaseFunction::sample_variance(3).unwrap(), &s).unwrap();
        assert!((v - 1.527_525_231_651_947).abs() < 1e-14);

        let mut a = DMatrix::zeros(3, 3);
        a[(0, 0)] = 1.0;
        a[(2, 2)] = 1.0;
        let mixed = BaseFunction::mixed_power(1.0, 1.0, a).unwrap();
        // λ = (−4/3, −1/3, 5/3): sqrt(16/9 + 25/9)
        let v = degree_one_statistic(&mixed, &s).unwrap();
        assert!((v - 41f64.sqrt() / 3.0).abs() < 1e-14, "{v}");

        let r = BaseFunction::range();
        assert_eq!(
            degree_one_statistic(&r, &s).unwrap(),
            feasible_statistic(&r, &s).unwrap()
        );
    }

    #[test]
    fn gini_examples() {
        let (p, l) = gini_mean_difference(&sample(&[1.0, 2.0, 4.0]));
        assert!((p - 2.0).abs() < 1e-15 && (l - 2.0).abs() < 1e-15);
        assert_eq!(gini_mean_difference(&sample(&[3.0, 3.0, 3.0, 3.0])), (0.0, 0.0));
        let (p, l) = gini_mean_difference(&sample(&[1.0, 3.0]));
        assert_eq!((p, l), (2.0, 2.0));
    }

    #[test]
    fn constructors_enforce_corollary_constraints() {
        assert!(BaseFunction::weighted_linear(vec![1.0, 0.0, 2.0]).is_err());
        assert!(BaseFunction::weighted_linear(vec![1.0, 1.0, 1.0]).is_err());
        assert!(BaseFunction::weighted_power(0.0, vec![1.0, 1.0]).is_err());
        assert!(BaseFunction::weighted_power(1.0, vec![0.0, 1.0, 1.0]).is_err());
        assert!(BaseFunction::weighted_power(1.0, vec![1.0, -1.0, 1.0]).is_err());
        let mut m = DMatrix::from_element(3, 3, 1.0);
        m[(0, 2)] = 0.0;
        m[(2, 0)] = 0.0;
        assert!(BaseFunction::pairwise_power(1.0, m).is_err());
        let mut m = DMatrix::from_element(3, 3, 1.0);
        m[(2, 2)] = 0.0;
        assert!(BaseFunction::mixed_power(1.0, 2.0, m).is_err());
        // singular
        assert!(BaseFunction::quadratic_form(DMatrix::from_element(3, 3, 1.0)).is_err());
    }

    #[test]
    fn quadratic_form_is_symmetrized() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 2.0]);
        let q = BaseFunction::quadratic_form(a).unwrap();
        assert_eq!(q.notes().len(), 1);
        match q.kind() {
            BaseKind::QuadraticForm(m) => assert_eq!(m[(0, 1)], 0.5),
            _ => unreachable!(),
        }
        let sym = BaseFunction::quadratic_form(DMatrix::identity(3, 3)).unwrap();
        assert!(sym.notes().is_empty());
        // Not positive definite until symmetrized? (A + Aᵀ)/2 of a skew-heavy matrix.
        let skew = DMatrix::from_row_slice(2, 2, &[1.0, 5.0, -5.0, 1.0]);
        assert!(BaseFunction::quadratic_form(skew).is_ok());
    }

    #[test]
    fn catalog_reductions() {
        let s = sample(&[0.7, 1.3, 2.2, 2.9, 4.4]);
        let n = s.n();
        let gini = feasible_statistic(&BaseFunction::gini_pairwise(n).unwrap(), &s).unwrap();
        let (gp, _) = gini_mean_difference(&s);
        assert!((gini - gp).abs() <= 1e-12 * gp);
        let var = feasible_statistic(&BaseFunction::sample_variance(n).unwrap(), &s).unwrap();
        assert!((var - s.variance()).abs() <= 1e-12 * var);
        let r = feasible_statistic(&BaseFunction::range_as_linear(n).unwrap(), &s).unwrap();
        let range = s.values()[n - 1] - s.values()[0];
        assert!((r - range).abs() <= 1e-12 * range);
    }

    #[test]
    fn parse_specs() {
        assert_eq!("range".parse::<BaseFunction>().unwrap(), BaseFunction::range());
        assert_eq!("Gini".parse::<BaseFunction>().unwrap().h_degree(), 1.0);
        let w: BaseFunction = "wlin:-1,0,1".parse().unwrap();
        assert_eq!(w.label(), "wlin:-1,0,1");
        let p: BaseFunction = "wpow:2;0.5,0.5,0.5".parse().unwrap();
        assert_eq!(p.h_degree(), 2.0);
        assert!("wpow:2".parse::<BaseFunction>().is_err());
        assert!("hoeffding".parse::<BaseFunction>().is_err());
        assert!("quad:/nonexistent/matrix.csv".parse::<BaseFunction>().is_err());
    }

    #[test]
    fn parse_matrix_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("a.csv"), "1, 0.5, 1\n0.5, 1, 0.5\n1, 0.5, 1\n").unwrap();
        std::fs::write(dir.path().join("pd.csv"), "2,1,0\n1,2,1\n0,1,2\n").unwrap();
        let m = BaseFunction::parse_in("mixed:1,2;a.csv", Some(dir.path())).unwrap();
        assert_eq!(m.h_degree(), 3.0);
        assert_eq!(m.dimension(), Some(3));
        let q = BaseFunction::parse_in("quad:pd.csv", Some(dir.path())).unwrap();
        assert_eq!(q.h_degree(), 2.0);
        let pp = BaseFunction::parse_in("pairpow:1.5;a.csv", Some(dir.path())).unwrap();
        assert_eq!(pp.h_degree(), 1.5);
        assert!(parse_matrix_csv("1,2\n3\n").is_err());
    }

    mod props {
        use super::*;
        use proptest::collection::vec;
        use proptest::prelude::*;

        fn samples() -> impl Strategy<Value = Vec<f64>> {
            (3usize..=10).prop_flat_map(|n| vec(0.01f64..100.0, n))
        }

        proptest! {
            #[test]
            fn gini_pairwise_equals_linear_form(x in samples()) {
                let s = OrderedSample::new(&x).unwrap();
                let (p, l) = gini_mean_difference(&s);
                prop_assert!((p - l).abs() <= 1e-12 * p.abs().max(1e-300));
            }

            #[test]
            fn scale_equivariance(x in samples(), c in 0.01f64..100.0) {
                let s = OrderedSample::new(&x).unwrap();
                let sc = s.scaled(c).unwrap();
                let n = s.n();
                for u in [
                    BaseFunction::range(),
                    BaseFunction::gini(),
                    BaseFunction::cv(),
                    BaseFunction::sample_variance(n).unwrap(),
                    BaseFunction::gini_pairwise(n).unwrap(),
                ] {
                    let a = degree_one_statistic(&u, &s).unwrap();
                    let b = degree_one_statistic(&u, &sc).unwrap();
                    prop_assert!((b - c * a).abs() <= 1e-10 * (c * a).max(1e-300), "{u}");
                }
            }

            #[test]
            fn translation_leaves_statistic_unchanged(x in samples(), shift in 0.0f64..10.0) {
                let s = OrderedSample::new(&x).unwrap();
                let shifted: Vec<f64> = x.iter().map(|v| v + shift).collect();
                let t = OrderedSample::new(&shifted).unwrap();
                let spread = s.values()[s.n() - 1] - s.values()[0];
                for u in [BaseFunction::range(), BaseFunction::gini(), BaseFunction::cv()] {
                    let a = feasible_statistic(&u, &s).unwrap();
                    let b = feasible_statistic(&u, &t).unwrap();
                    prop_assert!((a - b).abs() <= 1e-12 * (spread + shift + 1.0) * 100.0);
                }
            }
        }
    }
}
