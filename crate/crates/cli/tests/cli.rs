//! End-to-end subcommand tests through the built binary: format contracts,
//! determinism, and the exit-code table.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ridgekit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn path_str(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn read_lines(path: &str) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

/// Labeled samples from an exact one-dimensional ridge along (1,2,-1)/√6,
/// plus the matching analytic gradients.
fn write_ridge_fixture(dir: &Path) -> (PathBuf, PathBuf) {
    let w = [1.0, 2.0, -1.0];
    let norm = (6.0_f64).sqrt();
    let mut rng_state = 88172645463325252u64;
    let mut next = move || {
        // xorshift64 is plenty for fixture data
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        (rng_state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let mut samples = String::from("x1,x2,x3,f\n");
    let mut grads = String::from("g1,g2,g3\n");
    for _ in 0..200 {
        let x = [next(), next(), next()];
        let y = (x[0] * w[0] + x[1] * w[1] + x[2] * w[2]) / norm;
        let f = 1.0 + y + 0.5 * y * y;
        let df = 1.0 + y;
        samples.push_str(&format!("{},{},{},{}\n", x[0], x[1], x[2], f));
        grads.push_str(&format!(
            "{},{},{}\n",
            df * w[0] / norm,
            df * w[1] / norm,
            df * w[2] / norm
        ));
    }
    let samples_path = dir.join("samples.csv");
    let grads_path = dir.join("grads.csv");
    fs::write(&samples_path, samples).unwrap();
    fs::write(&grads_path, grads).unwrap();
    (samples_path, grads_path)
}

#[test]
fn sample_lhs_satisfies_latin_property() {
    let dir = TempDir::new().unwrap();
    let out = path_str(&dir, "lhs.csv");
    run_ok(&[
        "sample", "lhs", "--count", "4", "--dim", "1", "--seed", "7", "--out", &out,
    ]);
    let lines = read_lines(&out);
    assert_eq!(lines[0], "x1");
    assert_eq!(lines.len(), 5);
    let mut seen = [false; 4];
    for line in &lines[1..] {
        let v: f64 = line.parse().unwrap();
        let stratum = ((v * 4.0).floor() as usize).min(3);
        assert!(!seen[stratum], "stratum {stratum} occupied twice");
        seen[stratum] = true;
    }
}

#[test]
fn sample_reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = path_str(&dir, "a.csv");
    let b = path_str(&dir, "b.csv");
    let args = |out: &str| {
        vec![
            "sample".to_string(),
            "gaussian".into(),
            "--count".into(),
            "50".into(),
            "--dim".into(),
            "3".into(),
            "--seed".into(),
            "11".into(),
            "--out".into(),
            out.to_string(),
        ]
    };
    run_ok(&args(&a).iter().map(String::as_str).collect::<Vec<_>>());
    run_ok(&args(&b).iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn sample_box_bounds_hold() {
    let dir = TempDir::new().unwrap();
    let out = path_str(&dir, "box.csv");
    run_ok(&[
        "sample", "lhs", "--count", "32", "--dim", "2", "--seed", "3", "--box",
        "-0.01:0.01", "--out", &out,
    ]);
    for line in &read_lines(&out)[1..] {
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert!((-0.01..=0.01).contains(&v), "{v} outside the box");
        }
    }
}

#[test]
fn sample_io_failure_is_exit_2() {
    let out = run(&[
        "sample", "lhs", "--count", "4", "--dim", "1", "--seed", "0", "--out",
        "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn subspace_linear_function_spectrum() {
    let dir = TempDir::new().unwrap();
    // Constant gradient b = (3, 4): eigenvalues (25, 0), n = 1.
    let grads = path_str(&dir, "g.csv");
    let mut content = String::from("g1,g2\n");
    for _ in 0..20 {
        content.push_str("3.0,4.0\n");
    }
    fs::write(&grads, content).unwrap();
    let out = path_str(&dir, "spec.json");
    run_ok(&[
        "subspace", "--grads", &grads, "--bootstrap", "10", "--seed", "1", "--out", &out,
    ]);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["suggested_n"], 1);
    assert!((doc["eigenvalues"][0].as_f64().unwrap() - 25.0).abs() <= 1e-10);
    assert!(doc["eigenvalues"][1].as_f64().unwrap().abs() <= 1e-12);
    assert_eq!(doc["bootstrap"]["B"], 10);
    // Degenerate resampling: replicate ranges collapse.
    let range = doc["bootstrap"]["eigen_ranges"][0].as_array().unwrap();
    assert_eq!(range[0], range[2]);
}

#[test]
fn subspace_single_row_is_rank_one() {
    let dir = TempDir::new().unwrap();
    let grads = path_str(&dir, "g.csv");
    fs::write(&grads, "g1,g2,g3\n1.0,2.0,2.0\n").unwrap();
    let out = path_str(&dir, "spec.json");
    run_ok(&["subspace", "--grads", &grads, "--bootstrap", "5", "--out", &out]);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!((doc["eigenvalues"][0].as_f64().unwrap() - 9.0).abs() <= 1e-10);
    assert!(doc["eigenvalues"][1].as_f64().unwrap().abs() <= 1e-12);
    assert_eq!(doc["suggested_n"], 1);
}

#[test]
fn subspace_no_gap_reports_null_with_warning() {
    let dir = TempDir::new().unwrap();
    let grads = path_str(&dir, "g.csv");
    // Alternating axis gradients give Ĉ = I: every ratio is 1.
    let mut content = String::from("g1,g2\n");
    for _ in 0..10 {
        content.push_str("1.4142135623730951,0\n0,1.4142135623730951\n");
    }
    fs::write(&grads, content).unwrap();
    let out = path_str(&dir, "spec.json");
    let result = run(&["subspace", "--grads", &grads, "--bootstrap", "5", "--out", &out]);
    assert_eq!(result.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc["suggested_n"].is_null());
    assert_eq!(doc["warning"], "no spectral gap");
}

#[test]
fn subspace_reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (_, grads) = write_ridge_fixture(dir.path());
    let grads = grads.to_string_lossy().into_owned();
    let a = path_str(&dir, "a.json");
    let b = path_str(&dir, "b.json");
    for out in [&a, &b] {
        run_ok(&["subspace", "--grads", &grads, "--bootstrap", "50", "--seed", "9", "--out", out]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn subspace_malformed_csv_is_exit_3_with_line() {
    let dir = TempDir::new().unwrap();
    let grads = path_str(&dir, "g.csv");
    fs::write(&grads, "g1,g2\n1.0,2.0\n1.0,oops\n").unwrap();
    let out = path_str(&dir, "spec.json");
    let result = run(&["subspace", "--grads", &grads, "--out", &out]);
    assert_eq!(result.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("line 3"), "stderr: {stderr}");
}

#[test]
fn fit_pipeline_recovers_exact_ridge() {
    let dir = TempDir::new().unwrap();
    let (samples, grads) = write_ridge_fixture(dir.path());
    let samples = samples.to_string_lossy().into_owned();
    let grads = grads.to_string_lossy().into_owned();
    let spec = path_str(&dir, "spec.json");
    let model = path_str(&dir, "model.json");
    let hist = path_str(&dir, "hist.csv");
    let pred = path_str(&dir, "pred.csv");

    run_ok(&["subspace", "--grads", &grads, "--bootstrap", "10", "--out", &spec]);
    run_ok(&[
        "fit", "--samples", &samples, "--dim", "1", "--degree", "2", "--iters", "5",
        "--init", "active", "--spectrum", &spec, "--out", &model, "--history", &hist,
    ]);

    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&model).unwrap()).unwrap();
    assert_eq!(doc["version"], "ridgekit-model-v1");
    assert_eq!(doc["m"], 3);
    assert_eq!(doc["n"], 1);
    assert!(doc["residual_final"].as_f64().unwrap() <= 1e-16);

    // History: header + 2P + 1 rows, residual column nonincreasing.
    let lines = read_lines(&hist);
    assert_eq!(lines[0], "iter,phase,residual");
    assert_eq!(lines.len(), 1 + 2 * 5 + 1);
    let residuals: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    for pair in residuals.windows(2) {
        assert!(pair[1] <= pair[0] + 1e-12);
    }

    run_ok(&["predict", "--model", &model, "--samples", &samples, "--out", &pred]);
    let lines = read_lines(&pred);
    assert_eq!(lines[0], "fhat");
    assert_eq!(lines.len(), 201);

    let err = run_ok(&["testerror", "--model", &model, "--samples", &samples]);
    let report: serde_json::Value =
        serde_json::from_slice(&err.stdout).expect("testerror prints JSON");
    assert!(report["mean_relative_error"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn fit_zero_iterations_single_history_row() {
    let dir = TempDir::new().unwrap();
    let (samples, _) = write_ridge_fixture(dir.path());
    let samples = samples.to_string_lossy().into_owned();
    let model = path_str(&dir, "model.json");
    let hist = path_str(&dir, "hist.csv");
    run_ok(&[
        "fit", "--samples", &samples, "--dim", "1", "--degree", "2", "--iters", "0",
        "--init", "identity", "--out", &model, "--history", &hist,
    ]);
    let lines = read_lines(&hist);
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("1,theta,"));
}

#[test]
fn fit_active_without_spectrum_is_exit_4() {
    let dir = TempDir::new().unwrap();
    let (samples, _) = write_ridge_fixture(dir.path());
    let samples = samples.to_string_lossy().into_owned();
    let model = path_str(&dir, "model.json");
    let out = run(&[
        "fit", "--samples", &samples, "--dim", "1", "--degree", "2", "--init", "active",
        "--out", &model,
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn fit_reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (samples, _) = write_ridge_fixture(dir.path());
    let samples = samples.to_string_lossy().into_owned();
    let m1 = path_str(&dir, "m1.json");
    let m2 = path_str(&dir, "m2.json");
    for out in [&m1, &m2] {
        run_ok(&[
            "fit", "--samples", &samples, "--dim", "1", "--degree", "3", "--iters", "4",
            "--init", "random", "--seed", "5", "--out", out,
        ]);
    }
    assert_eq!(fs::read(&m1).unwrap(), fs::read(&m2).unwrap());
}

#[test]
fn predict_dimension_mismatch_is_exit_5() {
    let dir = TempDir::new().unwrap();
    let (samples, _) = write_ridge_fixture(dir.path());
    let samples = samples.to_string_lossy().into_owned();
    let model = path_str(&dir, "model.json");
    run_ok(&[
        "fit", "--samples", &samples, "--dim", "1", "--degree", "2", "--iters", "1",
        "--init", "identity", "--out", &model,
    ]);
    let wrong = path_str(&dir, "wrong.csv");
    fs::write(&wrong, "x1,x2\n0.1,0.2\n").unwrap();
    let out = run(&["predict", "--model", &model, "--samples", &wrong, "--out", &path_str(&dir, "p.csv")]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn shadow_row_counts_and_unsupported_dim() {
    let dir = TempDir::new().unwrap();
    let (samples, _) = write_ridge_fixture(dir.path());
    let samples = samples.to_string_lossy().into_owned();
    let model1 = path_str(&dir, "m1.json");
    run_ok(&[
        "fit", "--samples", &samples, "--dim", "1", "--degree", "2", "--iters", "2",
        "--init", "identity", "--out", &model1,
    ]);
    let shadow1 = path_str(&dir, "s1.csv");
    run_ok(&["shadow", "--model", &model1, "--samples", &samples, "--out", &shadow1]);
    let lines = read_lines(&shadow1);
    assert_eq!(lines[0], "y,f");
    assert_eq!(lines.len(), 1 + 200 + 200);

    let model2 = path_str(&dir, "m2.json");
    run_ok(&[
        "fit", "--samples", &samples, "--dim", "2", "--degree", "2", "--iters", "2",
        "--init", "identity", "--out", &model2,
    ]);
    let shadow2 = path_str(&dir, "s2.csv");
    run_ok(&["shadow", "--model", &model2, "--samples", &samples, "--out", &shadow2]);
    let lines = read_lines(&shadow2);
    assert_eq!(lines[0], "y1,y2,f");
    assert_eq!(lines.len(), 1 + 200 + 2500);

    // A 4-dim fixture supports an n = 3 model, which shadow refuses.
    let mut wide = String::from("x1,x2,x3,x4,f\n");
    let base = fs::read_to_string(dir.path().join("samples.csv")).unwrap();
    for line in base.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        wide.push_str(&format!(
            "{},{},{},0.5,{}\n",
            fields[0], fields[1], fields[2], fields[3]
        ));
    }
    let wide_path = path_str(&dir, "wide.csv");
    fs::write(&wide_path, wide).unwrap();
    let model3 = path_str(&dir, "m3.json");
    run_ok(&[
        "fit", "--samples", &wide_path, "--dim", "3", "--degree", "2", "--iters", "1",
        "--init", "identity", "--out", &model3,
    ]);
    let out = run(&["shadow", "--model", &model3, "--samples", &wide_path, "--out", &path_str(&dir, "s3.csv")]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn sweep_small_table_is_sane_and_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = path_str(&dir, "a.csv");
    let b = path_str(&dir, "b.csv");
    for out in [&a, &b] {
        run_ok(&[
            "sweep", "--angles", "5", "--quad-outer", "41", "--quad-inner", "41", "--out", out,
        ]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let lines = read_lines(&a);
    assert_eq!(lines[0], "alpha,R");
    assert_eq!(lines.len(), 6);
    for line in &lines[1..] {
        let r: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(r >= 0.0);
    }
    // Endpoint α = 0 and the π/2 row exist.
    let alphas: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(alphas[0], 0.0);
    assert!((alphas[2] - std::f64::consts::FRAC_PI_2).abs() <= 1e-12);
}

#[test]
fn checkbound_reports_ok_for_exact_ridge() {
    let out = run_ok(&[
        "checkbound", "--function", "exact_ridge", "--dim", "1", "--quad-outer", "17",
        "--quad-inner", "17", "--seed", "2",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["m"], 3);
    assert!(doc["grad_norm"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn checkbound_unknown_function_fails() {
    let out = run(&["checkbound", "--function", "nope", "--dim", "1"]);
    assert_eq!(out.status.code(), Some(1));
}
