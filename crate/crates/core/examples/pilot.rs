//! Pilot runs used to freeze the lognormal residual threshold and the
//! goodness-of-fit power margin.
//!
//! cargo run --release -p gammachar-core --example pilot -- [seed] [--gof]

use std::time::Instant;

use gammachar::characterization::{functional_residual, power_experiment, ExperimentConfig, ResidualConfig};
use gammachar::BaseFunction;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map(|s| s.parse().expect("seed must be an integer")).unwrap_or(1001);
    let with_gof = args.next().as_deref() == Some("--gof");

    for d in ["gamma:2,1", "lognormal:0,1"] {
        let start = Instant::now();
        let cfg = ResidualConfig::standard(d.parse().unwrap(), BaseFunction::range(), 3, 100_000, seed);
        let r = functional_residual(&cfg).unwrap();
        println!("residual {d}: max {:.6} v0 {:.6} ({:.1?})", r.max_residual, r.v0, start.elapsed());
        for p in &r.points {
            println!("  xbar {:<4} v {:.4} residual {:.6}", p.xbar, p.v, p.residual);
        }
    }
    if !with_gof {
        return;
    }
    for d in ["gamma:2,1", "lognormal:0,1"] {
        let start = Instant::now();
        let cfg = ExperimentConfig {
            distributions: vec![d.parse().unwrap()],
            statistics: vec!["range".into()],
            n: 5,
            m: 500,
            alpha: 0.05,
            permutations: 499,
            replications: 200,
            seed,
            output: None,
        };
        let table = power_experiment(&cfg, None).unwrap();
        let row = &table.rows[0];
        println!("gof {d}: rejection rate {} ({}/{}) ({:.1?})", row.rate, row.rejections, row.replications, start.elapsed());
    }
}
