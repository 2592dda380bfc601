//! Verification routines behind the `verify-*` subcommands.

use rand::Rng;
use serde_json::{json, Value};

use gammachar::geometry::{
    b_domain_contains, jacobian_t2, lambda_tilde, numerical_jacobian, r_star_contains, t1_forward, t1_inverse,
    t2_forward, t2_inverse_map,
};
use gammachar::quadrature::{closed_form_i, integral_i, weighted_points, IntegrationMethod, Weighting};
use gammachar::seed;
use gammachar::statistics::{
    degree_one_statistic, estimate_h_bounds, feasible_statistic, gini_mean_difference, validate_feasibility,
    BaseFunction, OrderedSample,
};
use gammachar::{DistributionSpec, Result};

pub struct Check {
    pub passed: bool,
    pub summary: String,
    pub payload: Value,
}

fn random_sample<R: Rng>(n: usize, rng: &mut R) -> Result<OrderedSample> {
    let d = DistributionSpec::gamma(0.3 + 5.0 * rng.random::<f64>(), 0.1 + 10.0 * rng.random::<f64>())?;
    OrderedSample::new(&d.sample(n, rng.random())?)
}

pub fn lemma2(n: usize, method: IntegrationMethod, budget: usize, seed_value: u64) -> Result<Check> {
    let exact = closed_form_i(n)?;
    let r = integral_i(n, method, budget, seed_value)?;
    let diff = (r.value - exact).abs();
    let passed = match method {
        IntegrationMethod::TensorGrid => diff < 1e-3,
        _ => diff <= 3.0 * r.standard_error + 1e-12 * exact,
    };
    Ok(Check {
        passed,
        summary: format!(
            "n={n} {:?}: estimate {:.9} ± {:.3e} vs closed form {:.9} (|diff| {:.3e})",
            method, r.value, r.standard_error, exact, diff
        ),
        payload: json!({"n": n, "closed_form": exact, "result": r, "abs_diff": diff}),
    })
}

pub fn jacobian(n: usize, points: usize, seed_value: u64) -> Result<Check> {
    let mut rng = seed::rng(seed_value);
    let nodes: Vec<_> = weighted_points(n, Weighting::Lebesgue, points * 4 + 16, seed::derive_seed(seed_value, 1))?
        .into_iter()
        .filter(|p| p.weight > 0.0 && p.point.g_last() >= 1e-3)
        .take(points)
        .collect();
    let mut worst: f64 = 0.0;
    for p in &nodes {
        let w1 = 0.5 + 3.0 * rng.random::<f64>();
        let w3 = 0.05 + 0.5 * rng.random::<f64>();
        let analytic = jacobian_t2(n, w1, w3, &p.point)?;
        let mut x = p.point.t().to_vec();
        x.extend([w1, w3]);
        let fd = numerical_jacobian(t2_inverse_map(n), &x)?;
        worst = worst.max((fd.abs_det - analytic).abs() / analytic);
    }
    Ok(Check {
        passed: worst < 1e-6 && nodes.len() == points,
        summary: format!("n={n}: {} interior points, worst relative error {worst:.3e}", nodes.len()),
        payload: json!({"n": n, "points": nodes.len(), "worst_relative_error": worst}),
    })
}

pub fn gini(n: usize, samples: usize, seed_value: u64) -> Result<Check> {
    let mut rng = seed::rng(seed_value);
    let var = BaseFunction::sample_variance(n)?;
    let gini_pw = BaseFunction::gini_pairwise(n)?;
    let range_lin = BaseFunction::range_as_linear(n)?;
    let (mut worst_identity, mut worst_reduction): (f64, f64) = (0.0, 0.0);
    for _ in 0..samples {
        let s = random_sample(n, &mut rng)?;
        let (pw, lin) = gini_mean_difference(&s);
        worst_identity = worst_identity.max((pw - lin).abs() / pw);
        let x = s.values();
        let pairs = [
            (feasible_statistic(&var, &s)?, s.variance()),
            (feasible_statistic(&gini_pw, &s)?, lin),
            (feasible_statistic(&range_lin, &s)?, x[n - 1] - x[0]),
        ];
        for (a, b) in pairs {
            worst_reduction = worst_reduction.max((a - b).abs() / b);
        }
    }
    Ok(Check {
        passed: worst_identity < 1e-12 && worst_reduction < 1e-12,
        summary: format!(
            "n={n}, {samples} samples: pairwise vs linear Gini {worst_identity:.3e}, catalog reductions {worst_reduction:.3e}"
        ),
        payload: json!({"n": n, "samples": samples, "worst_identity": worst_identity, "worst_reduction": worst_reduction}),
    })
}

pub fn bounds(u: &BaseFunction, n: usize, budget: usize, trials: usize, seed_value: u64) -> Result<Check> {
    let feas = validate_feasibility(u, n, trials, seed_value)?;
    if !feas.passed {
        return Ok(Check {
            passed: false,
            summary: format!("{u} n={n}: not feasible; first counterexample {:?}", feas.counterexample),
            payload: json!({"feasibility": feas}),
        });
    }
    let b = estimate_h_bounds(u, n, budget, seed_value)?;
    let mut rng = seed::stream(seed_value, 7);
    let mut outside = 0usize;
    for _ in 0..trials {
        let s = random_sample(n, &mut rng)?;
        let r = degree_one_statistic(u, &s)? / s.sd();
        let slack = 1e-9 * b.upper;
        if r < b.lower - slack || r > b.upper + slack {
            outside += 1;
        }
    }
    Ok(Check {
        passed: outside == 0,
        summary: format!(
            "{u} n={n}: c_lower {:.6}, c_upper {:.6}; {outside} of {trials} sampled ratios outside",
            b.lower, b.upper
        ),
        payload: json!({"feasibility": feas, "bounds": b, "sampled": trials, "outside": outside}),
    })
}

pub fn roundtrip(n: usize, samples: usize, seed_value: u64) -> Result<Check> {
    let mut rng = seed::rng(seed_value);
    let (mut worst_fwd, mut worst_inv, mut outside): (f64, f64, usize) = (0.0, 0.0, 0);
    for _ in 0..samples {
        let s = random_sample(n, &mut rng)?;
        let c = t1_forward(&s)?;
        let c2 = t2_forward(&s)?;
        if !b_domain_contains(n, c.t.t())? || !r_star_contains(n, c2.t.t(), c2.w1, c2.w3)? {
            outside += 1;
        }
        let back = t1_inverse(&c.t, c.w1, c.w2)?;
        let scale = s.values()[n - 1];
        for (a, b) in s.values().iter().zip(back.values()) {
            worst_fwd = worst_fwd.max((a - b).abs() / scale);
        }
    }
    for p in weighted_points(n, Weighting::Lebesgue, samples, seed::derive_seed(seed_value, 1))? {
        if p.weight == 0.0 {
            continue;
        }
        let lambda = lambda_tilde(n, p.point.t());
        let w1 = 0.5 + 5.0 * rng.random::<f64>();
        let w2 = 0.9 * rng.random::<f64>() * w1 / (-lambda[0]);
        let x = t1_inverse(&p.point, w1, w2)?;
        if x.is_degenerate() {
            continue;
        }
        let c = t1_forward(&x)?;
        let mut e = ((c.w1 - w1) / w1).abs().max(((c.w2 - w2) / w2).abs());
        for (a, b) in c.t.t().iter().zip(p.point.t()) {
            e = e.max((a - b).abs());
        }
        worst_inv = worst_inv.max(e);
    }
    Ok(Check {
        passed: worst_fwd < 1e-10 && worst_inv < 1e-10 && outside == 0,
        summary: format!(
            "n={n}, {samples} inputs: inverse∘forward {worst_fwd:.3e}, forward∘inverse {worst_inv:.3e}, {outside} images outside the domain"
        ),
        payload: json!({"n": n, "samples": samples, "worst_inverse_forward": worst_fwd,
                        "worst_forward_inverse": worst_inv, "outside": outside}),
    })
}
