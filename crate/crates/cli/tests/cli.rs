use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Temporary directory holding freshly generated default fixtures.
struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let ws = Self { dir: TempDir::new().unwrap() };
        let out = ws.run(&["fixtures", "gen"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        ws
    }

    fn fixtures(&self) -> PathBuf {
        self.dir.path().join("fixtures.json")
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_spinlift"))
            .current_dir(self.dir.path())
            .env_remove("SPINLIFT_FIXTURES")
            .args(args)
            .output()
            .unwrap()
    }
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("invalid JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn golden_outputs() {
    let ws = Workspace::new();
    let cases: [(&[&str], &str); 5] = [
        (&["critical", "--k", "14"], "critical_14.json"),
        (&["hodge", "solve", "--min", "8", "--max", "20"], "hodge_solve_8_20.json"),
        (&["gamma", "--k", "14", "--compare-rs"], "gamma_14_rs.json"),
        (&["local-factor", "--label", "SK.14.2", "--p", "2"], "local_factor_sk14_2.json"),
        (&["--format", "table", "local-factor", "--label", "Delta.12.1", "--p", "2"], "local_factor_delta_2.txt"),
    ];
    for (args, file) in cases {
        let out = ws.run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&out), golden(file), "{args:?}");
    }
}

#[test]
fn fixtures_gen_is_deterministic() {
    let ws = Workspace::new();
    let first = fs::read(ws.fixtures()).unwrap();
    assert_eq!(ws.run(&["fixtures", "gen"]).status.code(), Some(0));
    assert_eq!(fs::read(ws.fixtures()).unwrap(), first);

    let doc: Value = serde_json::from_slice(&first).unwrap();
    let delta = doc["records"].as_array().unwrap().iter().find(|r| r["label"] == "Delta.12.1").unwrap();
    assert_eq!(delta["eigenvalues"][0]["p"], 2);
    assert_eq!(delta["eigenvalues"][0]["lambda_p"], "-24");
}

#[test]
fn fixtures_gen_single_prime() {
    let ws = Workspace::new();
    assert_eq!(ws.run(&["fixtures", "gen", "--out", "small.json", "--prime-bound", "2"]).status.code(), Some(0));
    let doc: Value = serde_json::from_str(&fs::read_to_string(ws.dir.path().join("small.json")).unwrap()).unwrap();
    for r in doc["records"].as_array().unwrap() {
        assert_eq!(r["eigenvalues"].as_array().unwrap().len(), 1, "{}", r["label"]);
    }
}

#[test]
fn fixtures_path_from_environment() {
    let ws = Workspace::new();
    let out = Command::new(env!("CARGO_BIN_EXE_spinlift"))
        .env("SPINLIFT_FIXTURES", ws.fixtures())
        .args(["satake", "--label", "Delta.12.1", "--p", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["lambda_p"], "-24");
}

#[test]
fn verify_miyawaki_passes_on_stock_fixtures() {
    let ws = Workspace::new();
    let out = ws.run(&["verify", "miyawaki"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["result"]["pass"], true);
    assert_eq!(doc["result"]["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_miyawaki_reports_corrupted_tau() {
    let ws = Workspace::new();
    let mut doc: Value = serde_json::from_slice(&fs::read(ws.fixtures()).unwrap()).unwrap();
    for r in doc["records"].as_array_mut().unwrap() {
        if r["label"] == "Delta.12.1" {
            r["eigenvalues"][0]["lambda_p"] = "-25".into();
        }
    }
    fs::write(ws.dir.path().join("bad.json"), serde_json::to_string(&doc).unwrap()).unwrap();
    let out = ws.run(&["--fixtures", "bad.json", "verify", "miyawaki"]);
    assert_eq!(out.status.code(), Some(1));
    let res = &json(&out)["result"];
    assert_eq!(res["pass"], false);
    let failed: Vec<&str> = res["failed"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(failed.contains(&"fixture_tau_2"));
    let tau = res["checks"].as_array().unwrap().iter().find(|c| c["name"] == "fixture_tau_2").unwrap();
    assert_eq!(tau["detail"]["fixture"], "-25");
    assert_eq!(tau["detail"]["recomputed"], "-24");
}

#[test]
fn missing_fixtures_is_invalid_input() {
    let dir = TempDir::new().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_spinlift"))
        .current_dir(dir.path())
        .env_remove("SPINLIFT_FIXTURES")
        .args(["verify", "miyawaki"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "invalid_input");
}

#[test]
fn lvalue_below_abscissa_is_numerical_error() {
    let ws = Workspace::new();
    let out = ws.run(&["lvalue", "--h", "Delta.12.1", "--g", "SK.14.2", "--s", "10", "--prime-bound", "50"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["kind"], "numerical_domain");
}

#[test]
fn lvalue_beyond_fixture_range_is_invalid_input() {
    let ws = Workspace::new();
    let out = ws.run(&["lvalue", "--h", "Delta.12.1", "--g", "SK.14.2", "--s", "40", "--prime-bound", "500"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lvalue_reports_bounds() {
    let ws = Workspace::new();
    let out = ws.run(&["lvalue", "--h", "Delta.12.1", "--g", "SK.14.2", "--s", "25", "--prime-bound", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let res = &json(&out)["result"];
    assert_eq!(res["weight"], 36);
    assert_eq!(res["abscissa_report"]["abscissa_used"], 19.5);
    assert_eq!(res["euler_product"]["primes_used"], 15);
    assert!(res["euler_product"]["tail_bound"].as_f64().unwrap() < 1e-3);
}

#[test]
fn lift_verify_exact_and_numeric() {
    let ws = Workspace::new();
    for mode in ["--exact", "--numeric"] {
        let out = ws.run(&["lift", "--h", "Delta.12.1", "--g", "SK.14.2", "--p", "3", "--verify", mode]);
        assert_eq!(out.status.code(), Some(0), "{mode}");
        assert_eq!(json(&out)["result"]["verification"]["pass"], true, "{mode}");
    }
    let out = ws.run(&["lift", "--h", "Delta.12.1", "--g", "SK.14.2", "--p", "2"]);
    assert_eq!(json(&out)["result"]["lifted_factor"]["coeffs"][1], "293760");
}

#[test]
fn lift_rejects_mismatched_weights() {
    let ws = Workspace::new();
    let out = ws.run(&["lift", "--h", "g26.26.1", "--g", "SK.14.2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["weights"]["status"], "rejected");
}

#[test]
fn cuspidality_synthetic_and_from_records() {
    let ws = Workspace::new();
    let out = ws.run(&["cuspidality", "--k", "20", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["verdict"], "cuspidal");
    let out = ws.run(&["cuspidality", "--k", "14", "--p", "3", "--h", "Delta.12.1", "--g", "SK.14.2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["source"], "Delta.12.1 x SK.14.2");
    assert_eq!(ws.run(&["cuspidality", "--k", "15", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn hodge_show_and_invalid_weight() {
    let ws = Workspace::new();
    let out = ws.run(&["hodge", "show", "--type", "gsp4", "--weight", "14"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["weight"], 25);
    assert_eq!(ws.run(&["hodge", "show", "--type", "gl2", "--weight", "7"]).status.code(), Some(2));
}

#[test]
fn report_subjects() {
    let ws = Workspace::new();
    let out = ws.run(&["report", "--subject", "hodge-solve", "--min", "8", "--max", "40"]);
    let res = &json(&out)["result"];
    assert_eq!(res["subject"], "hodge-solve");
    for t in res["data"]["solutions"].as_array().unwrap() {
        let big_k = t["K"].as_u64().unwrap();
        assert_eq!(t["k"].as_u64().unwrap() + 2, big_k);
        assert_eq!(t["l"].as_u64().unwrap(), big_k);
    }
    let out = ws.run(&["report", "--subject", "critical", "--k", "14"]);
    let c: Vec<i64> = json(&out)["result"]["data"]["critical"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect();
    assert_eq!(c, (14..=23).collect::<Vec<_>>());
    for subject in ["gamma", "cuspidality", "local-factor", "fixtures"] {
        let out = ws.run(&["report", "--subject", subject]);
        assert_eq!(out.status.code(), Some(0), "{subject}");
        assert_eq!(json(&out)["schema_version"], 1);
    }
}

#[test]
fn unknown_subject_is_rejected() {
    let ws = Workspace::new();
    let out = ws.run(&["report", "--subject", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn non_positive_tolerance_is_rejected() {
    let ws = Workspace::new();
    assert_eq!(ws.run(&["--log-tol", "0", "cuspidality", "--k", "14", "--p", "2"]).status.code(), Some(2));
}

#[test]
fn table_format_has_one_line_per_leaf() {
    let ws = Workspace::new();
    let out = ws.run(&["--format", "table", "critical", "--k", "14"]);
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.contains(" = ")));
    assert!(text.contains("result.critical[9] = 23"));
}
