use std::f64::consts::PI;

use pseudoherm::cli::run_to;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pseudoherm").chain(args.iter().copied());
    let code = run_to(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn tmp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("pseudoherm-cli-{}-{name}", std::process::id()))
}

#[test]
fn wedges_for_the_quartic() {
    let (code, out, _) = run(&["wedges", "--N", "4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# subcommand=wedges\n# seed=0\n# format=csv\n# N=4\n"));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 2);
    let right: Vec<f64> = rows[1][1..].iter().map(|v| v.parse().unwrap()).collect();
    // width 2π/6 ending on the positive real axis, anti-Stokes line in the middle
    assert!((right[0] + PI / 3.0).abs() < 1e-10);
    assert_eq!(right[1], 0.0);
    assert!((right[2] + PI / 6.0).abs() < 1e-10);
    let left: Vec<f64> = rows[0][1..].iter().map(|v| v.parse().unwrap()).collect();
    assert!((left[0] + PI).abs() < 1e-10 && (left[1] + 2.0 * PI / 3.0).abs() < 1e-10);
}

#[test]
fn kappa_rows_are_exact_fractions() {
    let (code, out, _) = run(&["kappa", "--upto", "7"]);
    assert_eq!(code, 0);
    let rows = data_rows(&out);
    let got: Vec<(&str, &str)> = rows.iter().map(|r| (r[0].as_str(), r[1].as_str())).collect();
    assert_eq!(got, [("1", "1/2"), ("3", "-1/4"), ("5", "1/2"), ("7", "-17/8")]);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["wedges", "--nope", "3"]).0, 2);
    assert_eq!(run(&["wedges", "--N", "four"]).0, 2);
    assert_eq!(run(&["kappa", "--format", "json"]).0, 2);
    assert_eq!(run(&[]).0, 2);
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["wedges", "metric-verify", "transition", "propagate", "verify-all"] {
        assert!(out.contains(sub), "{sub} missing from help");
    }
}

#[test]
fn config_sits_between_defaults_and_flags() {
    let cfg = tmp_path("swanson.cfg");
    std::fs::write(&cfg, "# swanson defaults\nalpha = 2.0\ng=0.25\n").unwrap();
    let path = cfg.to_str().unwrap();
    let (code, out, _) = run(&["swanson", "--config", path, "--g", "0.5"]);
    assert_eq!(code, 0);
    assert!(out.contains("# alpha=2.0\n") || out.contains("# alpha=2\n"), "{out}");
    assert!(out.contains("# g=0.5\n"));

    std::fs::write(&cfg, "alhpa=2.0\n").unwrap();
    let (code, _, err) = run(&["swanson", "--config", path]);
    assert_eq!(code, 2);
    assert!(err.contains("alhpa"));
    std::fs::remove_file(&cfg).unwrap();
}

#[test]
fn output_file_receives_the_report() {
    let file = tmp_path("kappa.csv");
    let path = file.to_str().unwrap();
    let (code, out, _) = run(&["kappa", "--upto", "3", "--output", path]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let (_, direct, _) = run(&["kappa", "--upto", "3"]);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), direct);
    std::fs::remove_file(&file).unwrap();
}

#[test]
fn runs_are_deterministic() {
    let a = run(&["verify-all", "--seed", "7", "--draws", "2"]);
    let b = run(&["verify-all", "--seed", "7", "--draws", "2"]);
    assert_eq!(a, b);
    assert!(a.1.contains("# seed=7\n"));
}

#[test]
fn verify_all_passes() {
    let (code, out, _) = run(&["verify-all"]);
    assert_eq!(code, 0, "{out}");
    let rows = data_rows(&out);
    assert!(rows.len() >= 20);
    assert!(rows.iter().all(|r| r[1] == "PASS"), "{out}");
}

#[test]
fn transition_rows_sorted_by_omega_then_xi() {
    let (code, out, _) = run(&["transition", "--xi", "3,0,1.5", "--omega", "1.9:2.1:3"]);
    assert_eq!(code, 0);
    let rows: Vec<(f64, f64, f64)> = data_rows(&out)
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap()))
        .collect();
    assert_eq!(rows.len(), 9);
    for w in rows.windows(2) {
        assert!(w[0].0 < w[1].0 || (w[0].0 == w[1].0 && w[0].1 < w[1].1));
    }
    // on resonance the mapped element scales by (1 − 2ξ), so P by its square
    let at = |xi: f64| rows.iter().find(|r| r.0 == 2.0 && r.1 == xi).unwrap().2;
    assert!((at(3.0) / at(0.0) - 25.0).abs() < 1e-9);
    assert!((at(1.5) / at(0.0) - 4.0).abs() < 1e-9);
}

#[test]
fn numeric_failures_exit_with_one() {
    let (code, _, err) = run(&["spiked", "--alpha", "-2"]);
    assert_eq!(code, 1);
    assert!(err.contains("alpha"));
    // x p never terminates against p²/2 + x²/2
    let (code, out, _) = run(&["bch", "--q", "1 1 1 0", "--o", "0 2 0.5 0; 2 0 0.5 0", "--max-order", "6"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn metric_verify_reports_status() {
    // Swanson Hamiltonian with its exact metric exponent g x²
    let (code, out, _) = run(&["metric-verify", "--H", "0 2 0.5 0; 2 0 0.5 0; 1 1 0 -0.3", "--exponent", "2 0 0.3 0"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = run(&["metric-verify", "--H", "0 2 0.5 0; 2 0 0.5 0; 1 1 0 -0.3", "--exponent", "2 0 0.2 0"]);
    assert_eq!(code, 1);
}
