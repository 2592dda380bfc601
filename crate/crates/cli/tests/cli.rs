use std::path::Path;
use std::process::{Command, Output};

use gammachar::reporting::{read_run, table_path};
use gammachar::DistributionSpec;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gammachar"));
    c.env_remove("GAMMACHAR_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_values(path: &Path, header: Option<&str>, values: &[f64]) {
    let mut text = String::new();
    if let Some(h) = header {
        text.push_str(h);
        text.push('\n');
    }
    for v in values {
        text.push_str(&format!("{v}\n"));
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn lemma2_exit_codes() {
    let o = run(&["verify-lemma2", "--n", "3", "--budget", "1000000", "--seed", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("1.047197551"));
    assert_eq!(code(&run(&["verify-lemma2", "--n", "2"])), 2);
    assert_eq!(code(&run(&["verify-lemma2", "--n", "4", "--budget", "10"])), 2);
}

#[test]
fn help_on_every_subcommand() {
    for sub in [
        "verify-lemma2",
        "verify-jacobian",
        "verify-gini",
        "verify-bounds",
        "verify-roundtrip",
        "residual",
        "ode-check",
        "gof",
        "independence",
        "experiment",
    ] {
        let o = run(&[sub, "--help"]);
        assert_eq!(code(&o), 0, "{sub}");
        assert!(String::from_utf8_lossy(&o.stdout).contains("Usage"), "{sub}");
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["verify-gini", "--n", "4", "--bogus-flag"])), 2);
    assert_eq!(code(&run(&["residual", "--dist", "cauchy:1"])), 2);
}

#[test]
fn gof_on_gamma_and_lognormal_data() {
    let dir = tempfile::tempdir().unwrap();
    let gamma = dir.path().join("gamma.csv");
    write_values(&gamma, Some("x"), &DistributionSpec::gamma(2.0, 1.0).unwrap().sample(2500, 1).unwrap());
    let args = |p: &Path| {
        vec![
            "gof".to_string(),
            "--input".into(),
            p.display().to_string(),
            "--stat".into(),
            "range".into(),
            "--group-size".into(),
            "5".into(),
            "--alpha".into(),
            "0.05".into(),
            "--perms".into(),
            "499".into(),
            "--seed".into(),
            "7".into(),
        ]
    };
    let o = bin().args(args(&gamma)).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    let ln = dir.path().join("ln.txt");
    write_values(&ln, None, &DistributionSpec::lognormal(0.0, 1.0).unwrap().sample(2500, 1).unwrap());
    let o = bin().args(args(&ln)).output().unwrap();
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("gamma rejected"));
}

#[test]
fn gof_bad_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.csv");
    std::fs::write(&p, "1,2\n3,4\n").unwrap();
    assert_eq!(code(&run(&["gof", "--input", p.to_str().unwrap(), "--group-size", "3"])), 2);
    write_values(&p, None, &[1.0, 2.0, -1.0, 3.0, 4.0, 5.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    assert_eq!(code(&run(&["gof", "--input", p.to_str().unwrap(), "--group-size", "3"])), 2);
    write_values(&p, None, &[1.0, 2.0, 3.0]);
    assert_eq!(code(&run(&["gof", "--input", p.to_str().unwrap(), "--group-size", "3"])), 2);
    let missing = dir.path().join("missing.csv");
    assert_eq!(code(&run(&["gof", "--input", missing.to_str().unwrap(), "--group-size", "3"])), 2);
}

#[test]
fn seed_determines_output_and_env_default() {
    let a = run(&["independence", "--m", "100", "--perms", "99", "--seed", "5"]);
    let b = run(&["independence", "--m", "100", "--perms", "99", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let c = bin()
        .args(["independence", "--m", "100", "--perms", "99"])
        .env("GAMMACHAR_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
    let d = run(&["independence", "--m", "100", "--perms", "99", "--seed", "6"]);
    assert_ne!(a.stdout, d.stdout);
}

#[test]
fn run_record_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ode.json");
    let o = run(&["ode-check", "--dist", "lognormal:0,1", "--grid", "1,2.718281828459045", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r = read_run(&out).unwrap();
    assert_eq!(r.command, "ode-check");
    assert_eq!(r.payload["passed"], false);
    assert!((r.payload["result"]["spread"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let missing = dir.path().join("nope").join("x.json");
    let o = run(&["verify-gini", "--n", "3", "--samples", "10", "--out", missing.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn experiment_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    std::fs::write(
        &cfg,
        r#"distributions = ["gamma:2,1", "discrete:1,2,3"]
statistics = ["range", "gini"]
n = 3
m = 40
permutations = 99
replications = 3
seed = 4
output = "table.csv"
"#,
    )
    .unwrap();
    let rec = dir.path().join("run.json");
    let o = run(&["experiment", "--config", cfg.to_str().unwrap(), "--out", rec.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv_text = std::fs::read_to_string(dir.path().join("table.csv")).unwrap();
    let mut lines = csv_text.lines();
    assert_eq!(lines.next().unwrap(), "distribution,statistic,n,m,rejections,replications,rate,stderr");
    assert_eq!(lines.count(), 4);
    let mirror: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("table.json")).unwrap()).unwrap();
    assert_eq!(mirror["mode_label"], "conjecture");
    assert_eq!(std::fs::read_to_string(table_path(&rec)).unwrap(), csv_text);
    assert!(String::from_utf8_lossy(&o.stdout).contains("conjecture"));

    std::fs::write(&cfg, "n = 3\n").unwrap();
    assert_eq!(code(&run(&["experiment", "--config", cfg.to_str().unwrap()])), 2);
}
