use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hyperspec"));
    c.env_remove("HYPERSPEC_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hyperspec")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn edge_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

struct Fixture {
    dir: TempDir,
    c3: PathBuf,
    c4: PathBuf,
}

fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let c3 = edge_file(dir.path(), "c3.edges", "3 3\n0 1\n1 2\n2 0\n");
    let c4 = edge_file(dir.path(), "c4.edges", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    Fixture { dir, c3, c4 }
}

fn power_json(f: &Fixture, graph: &Path, k: usize, name: &str) -> PathBuf {
    let out = f.dir.path().join(name);
    let o = run(&["power", graph.to_str().unwrap(), "--k", &k.to_string(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn power_writes_uniform_hypergraph() {
    let f = fixture();
    let path = power_json(&f, &f.c3, 4, "c3_4.json");
    let json: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(json["n"], 6);
    assert_eq!(json["k"], 4);
    assert_eq!(json["edges"].as_array().unwrap().len(), 3);

    let o = run(&["power", f.c3.to_str().unwrap(), "--k", "6", "--s", "1", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "G^{6,1}: 15 vertices, 3 edges, rank 6\n");
}

#[test]
fn power_rejects_odd_k() {
    let f = fixture();
    let o = run(&["power", f.c3.to_str().unwrap(), "--k", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k must be even for s=k/2"));
}

#[test]
fn bad_input_exits_2() {
    let f = fixture();
    let bad = edge_file(f.dir.path(), "bad.edges", "3 2\n0 1\n");
    assert_eq!(run(&["spectrum", bad.to_str().unwrap(), "--k", "4"]).status.code(), Some(2));
    let missing = f.dir.path().join("missing.edges");
    assert_eq!(run(&["spectrum", missing.to_str().unwrap(), "--k", "4"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", f.c3.to_str().unwrap(), "--k", "4", "--budget", "0"]).status.code(), Some(2));
}

fn values(report: &Value) -> Vec<(f64, f64)> {
    report["values"].as_array().unwrap().iter().map(|v| (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())).collect()
}

#[test]
fn h_only_spectrum_of_triangle() {
    let f = fixture();
    let o = run(&["spectrum", f.c3.to_str().unwrap(), "--k", "4", "--kind", "L", "--h-only"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["kind"], "L");
    assert_eq!(report["complete"], true);
    let vals = values(&report);
    assert_eq!(vals.len(), 4);
    for (got, want) in vals.iter().zip([0.0, 1.0, 2.0, 3.0]) {
        assert!((got.0 - want).abs() < 1e-9 && got.1.abs() < 1e-9, "{got:?}");
    }
}

#[test]
fn laplacian_and_signless_spectra_agree_at_k4() {
    let f = fixture();
    let l: Value =
        serde_json::from_str(&stdout(&run(&["spectrum", f.c3.to_str().unwrap(), "--k", "4", "--kind", "L"]))).unwrap();
    let q: Value =
        serde_json::from_str(&stdout(&run(&["spectrum", f.c3.to_str().unwrap(), "--k", "4", "--kind", "Q"]))).unwrap();
    let (l, q) = (values(&l), values(&q));
    assert_eq!(l.len(), q.len());
    for (a, b) in l.iter().zip(&q) {
        assert!((a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8);
    }
}

#[test]
fn pretty_summary_reports_strict_gap_at_k6() {
    let f = fixture();
    let o = run(&["spectrum", f.c3.to_str().unwrap(), "--k", "6", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().last().unwrap().starts_with("rho(L) = 3.657583 < rho(Q) = 4.000000"), "{text}");
}

#[test]
fn csv_spectrum_has_re_im_columns() {
    let f = fixture();
    let text = stdout(&run(&["spectrum", f.c3.to_str().unwrap(), "--k", "4", "--h-only", "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,subset,phase"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn small_budget_exits_3() {
    let f = fixture();
    let o = bin().args(["spectrum", f.c3.to_str().unwrap(), "--k", "6"]).env("HYPERSPEC_BUDGET", "4").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["complete"], false);
    assert!(report["budget_used"].as_u64().unwrap() <= 4);
}

#[test]
fn verify_equal_radius_and_gap() {
    let f = fixture();
    let o = run(&["verify", f.c3.to_str().unwrap(), "--k", "4,8,12", "--check", "equal-radius"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
    assert_eq!(report["pass"], true);

    let o = run(&["verify", f.c3.to_str().unwrap(), "--k", "6,10,14", "--check", "large-k-gap", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("k,lambda_max_L,rho_Q,rho_uniform_phase,margin,pass\n"), "{text}");
    let gaps: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(4).unwrap().parse().unwrap()).collect();
    assert!(gaps.windows(2).all(|w| w[0] > w[1]));
    assert!((gaps[0] - 0.5358984).abs() < 1e-6);
}

#[test]
fn verify_requires_non_bipartite_graph() {
    let f = fixture();
    let o = run(&["verify", f.c4.to_str().unwrap(), "--k", "4", "--check", "equal-radius"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("requires non-bipartite graph"));

    let o = run(&["verify", f.c4.to_str().unwrap(), "--k", "4..6", "--check", "bipartite-chain"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_failure_exits_1() {
    // A negative tolerance makes every equality row fail.
    let f = fixture();
    let o = run(&["verify", f.c3.to_str().unwrap(), "--k", "4", "--check", "lambda-max", "--tol=-1"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn certificates_for_powers() {
    let f = fixture();
    let cases = [
        (&f.c3, 4, "c3_4.json", true, false),
        (&f.c4, 4, "c4_4.json", true, true),
        (&f.c3, 6, "c3_6.json", false, false),
    ];
    for (graph, k, name, any, odd) in cases {
        let path = power_json(&f, graph, k, name);
        let o = run(&["certificate", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["odd_bipartite"], odd, "{name}");
        let moduli = report["moduli"].as_object().unwrap();
        let mut keys: Vec<u64> = moduli.keys().map(|m| m.parse().unwrap()).collect();
        keys.sort_unstable();
        assert_eq!(keys, vec![2, k as u64, 2 * k as u64]);
        assert_eq!(moduli.values().any(|v| v["solvable"] == true), any, "{name}");
        assert_eq!(moduli["2"]["solvable"], odd);
        if k == 4 && !odd {
            assert_eq!(moduli["4"]["solvable"], true);
            assert_eq!(moduli["4"]["gauge"]["mod"], 4);
        }
        if !any {
            assert!(moduli.values().all(|v| v["gauge"].is_null()));
        }
    }
    let path = f.dir.path().join("c3_6.json");
    let text = stdout(&run(&["certificate", path.to_str().unwrap(), "--format", "pretty"]));
    assert!(text.contains("inconclusive"), "{text}");
    assert_eq!(run(&["certificate", path.to_str().unwrap(), "--moduli", "3"]).status.code(), Some(2));
}

#[test]
fn perron_on_signless_power() {
    let f = fixture();
    let path = power_json(&f, &f.c3, 6, "c3_6.json");
    let o = run(&["perron", path.to_str().unwrap(), "--kind", "Q", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("rho(Q) = 4.000000"), "{}", stdout(&o));
    assert_eq!(run(&["perron", path.to_str().unwrap(), "--kind", "L"]).status.code(), Some(2));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let f = fixture();
    let path = power_json(&f, &f.c3, 6, "c3_6.json");
    let commands: Vec<Vec<String>> = vec![
        vec!["spectrum".into(), f.c3.display().to_string(), "--k".into(), "6".into()],
        vec!["spectrum".into(), f.c3.display().to_string(), "--k".into(), "8".into(), "--kind".into(), "A".into()],
        vec![
            "verify".into(),
            f.c3.display().to_string(),
            "--k".into(),
            "4..8".into(),
            "--check".into(),
            "lambda-max".into(),
        ],
        vec!["certificate".into(), path.display().to_string()],
    ];
    for args in commands {
        let one = bin().args(&args).args(["--parallel", "1"]).output().unwrap();
        let eight = bin().args(&args).args(["--parallel", "8"]).output().unwrap();
        assert_eq!(one.status.code(), Some(0), "{args:?}");
        assert_eq!(one.stdout, eight.stdout, "{args:?}");
    }
    assert_eq!(run(&["spectrum", f.c3.to_str().unwrap(), "--k", "4", "--parallel", "0"]).status.code(), Some(2));
}
