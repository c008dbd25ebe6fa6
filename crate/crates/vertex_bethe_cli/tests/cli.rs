use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_vertex-bethe"));
    c.env_remove("VERTEX_BETHE_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vertex-bethe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn verify_elliptic_passes() {
    let out = run(&["verify", "elliptic"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["summary"]["all_pass"], Value::Bool(true));
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["suite"] == "elliptic"));
}

#[test]
fn verify_bethe_reports_configured_solution() {
    let out = run(&["verify", "bethe"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    let row = doc["checks"].as_array().unwrap().iter().find(|c| c["check"] == "configured-solution").unwrap();
    assert_eq!(row["pass"], Value::Bool(true));
    let note = row["note"].as_str().unwrap();
    assert!(note.contains("roots=[0.000000000000+0.000000000000i]") || note.contains("-0.000000000000"), "{note}");
}

#[test]
fn odd_r_is_a_usage_error() {
    let cfg = scratch("odd-r.toml");
    std::fs::write(&cfg, "r = 7\n").unwrap();
    for out in [run(&["verify", "elliptic", "--config", cfg.to_str().unwrap()]), run(&["verify", "elliptic", "--r", "7"])] {
        assert_eq!(out.status.code(), Some(2));
        assert!(stderr(&out).contains("r is even, r′ is odd"), "{}", stderr(&out));
    }
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let cfg = scratch("unknown.toml");
    std::fs::write(&cfg, "spin = 1\n").unwrap();
    let out = run(&["verify", "elliptic", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn two_site_chain_has_root_at_origin() {
    let out = run(&["bethe-solve"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    let roots = doc["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    assert!(f(&roots[0]["re"]).hypot(f(&roots[0]["im"])) < 1e-10);
    let sr = &doc["summary"]["sum_rule"];
    assert_eq!((sr["n0"].as_i64(), sr["n1"].as_i64()), (Some(0), Some(0)));
}

#[test]
fn four_site_roots_are_symmetric() {
    let out = run(&["bethe-solve", "--n-sites", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    let roots = doc["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    let re = f(&roots[0]["re"]) + f(&roots[1]["re"]);
    let im = f(&roots[0]["im"]) + f(&roots[1]["im"]);
    assert!(re.hypot(im) < 1e-9);
    for s in doc["summary"]["eigenvalue_samples"].as_array().unwrap() {
        assert!(f(&s["eigenvector_residual"]) < 1e-7);
    }
}

#[test]
fn bad_start_exits_with_trace() {
    let out = run(&["bethe-solve", "--init", "explicit", "--roots", "0.3,0.2", "--max-iter", "3"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["summary"]["converged"], Value::Bool(false));
    assert!(!doc["summary"]["newton_trace"].as_array().unwrap().is_empty());
    assert!(stderr(&out).contains("newton trace"));
}

#[test]
fn smatrix_table_has_four_variants() {
    let out = run(&["tabulate", "smatrix", "--grid", "-0.4:0.4:9"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for row in rows {
        for v in ["I0", "I1", "II0", "II1"] {
            let z = f(&row[format!("{v}_re")]).hypot(f(&row[format!("{v}_im")]));
            assert!((z - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn s_vs_r_reports_one_spread_per_point() {
    let out = run(&["tabulate", "s-vs-r", "--grid", "-0.3:0.3:7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| f(&r["spread"]) < 1e-6));
}

#[test]
fn density_csv_integrates_to_one_half() {
    let out = run(&["tabulate", "densities", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().get(1), Some("rho"));
    let ys: Vec<f64> = rdr.records().map(|r| r.unwrap()[1].parse().unwrap()).collect();
    assert_eq!(ys.len(), 201);
    let h = 1.0 / (ys.len() - 1) as f64;
    let trap = h * (ys.iter().sum::<f64>() - 0.5 * (ys[0] + ys[ys.len() - 1]));
    assert!((trap - 0.5).abs() < 1e-9, "{trap}");
}

#[test]
fn free_energy_outside_strip_is_rejected() {
    let out = run(&["tabulate", "free-energy", "--grid", "-0.2:0.1:4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("-0.2"), "{}", stderr(&out));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["tabulate", "densities", "--grid", "-0.5:0.5:21"]);
    let b = run(&["tabulate", "densities", "--grid", "-0.5:0.5:21"]);
    assert_eq!(a.stdout, b.stdout);
    let single = bin().args(["tabulate", "densities", "--grid", "-0.5:0.5:21"]).env("VERTEX_BETHE_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, single.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("smatrix.csv");
    let out = run(&["tabulate", "smatrix", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("x,I0_re,I0_im"));
}

#[test]
fn invalid_thread_count_is_a_usage_error() {
    let out = bin().args(["verify", "elliptic"]).env("VERTEX_BETHE_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
