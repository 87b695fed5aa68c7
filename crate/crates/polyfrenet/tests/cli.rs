//! End-to-end tests of the `polyfrenet` binary: exit codes, file outputs,
//! configuration precedence, and JSON report round-trips.

use std::process::Command;

use polyfrenet::cli::{ClassifyInputs, VerifyInputs};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyfrenet"))
}

fn run_json(args: &[&str]) -> (i32, serde_json::Value) {
    let out = bin().args(args).output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let value = serde_json::from_str(&stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {stdout}\nstderr: {}", String::from_utf8_lossy(&out.stderr))
    });
    (code, value)
}

#[test]
fn classify_reports_the_expected_root_and_round_trips() {
    let (code, report) = run_json(&[
        "classify",
        "--model",
        "spaceform",
        "--c",
        "1",
        "--eps",
        "1,1,-1",
        "--r",
        "3",
        "--kappa-sq",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["status"], "feasible");
    let sols = report["result"]["solutions"].as_array().unwrap();
    let proper: Vec<f64> = sols
        .iter()
        .filter(|s| s["degenerate"] == false)
        .map(|s| s["value"].as_f64().unwrap())
        .collect();
    assert_eq!(proper, vec![3.0]);
    assert!(sols.iter().any(|s| s["degenerate"] == true));

    // the inputs echo re-parses into the same configuration
    let inputs: ClassifyInputs = serde_json::from_value(report["inputs"].clone()).unwrap();
    assert_eq!(inputs.eps, vec![1, 1, -1]);
    assert_eq!(inputs.r, 3);
    assert_eq!(inputs.kappa_sq, vec!["2".to_string()]);
    assert_eq!(
        serde_json::to_value(&inputs).unwrap(),
        report["inputs"],
        "inputs echo must round-trip"
    );
}

#[test]
fn classify_rw_power_law() {
    let (code, report) = run_json(&[
        "classify", "--model", "rw", "--f", "t^(1/2)", "--r", "2", "--t0", "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["status"], "feasible");
    assert_eq!(report["result"]["solutions"][0]["exact"], "1/8");
    assert_eq!(report["deceleration"], "1");
}

#[test]
fn classify_product_lift_reports_both_sides() {
    let (code, report) = run_json(&[
        "classify",
        "--model",
        "product",
        "--eps",
        "-1,1",
        "--d1-sq",
        "2",
        "--kappa-alpha-sq",
        "1/2",
        "--tau-alpha-sq",
        "1/2",
        "--c",
        "1",
        "--r",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["status"], "feasible");
    assert_eq!(report["check"]["sides_agree"], true);
    assert_eq!(report["lifted"]["tau_sq"], "3/2");
}

#[test]
fn rw_t0_sweep_reports_curvature_per_time() {
    let out = bin()
        .args([
            "sweep", "--model", "rw", "--f", "t^(1/2)", "--r", "2", "--t0-range", "1:4:1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    // kappa = 1/(2 t0) and the square-root law is feasible at every time
    assert!(rows[3].starts_with("4,2,1.25"));
    assert!(rows.iter().all(|r| r.ends_with(",1")));
}

#[test]
fn verify_agrees_on_the_worked_example() {
    let (code, report) = run_json(&[
        "verify",
        "--c",
        "1",
        "--eps",
        "1,-1,-1,1",
        "--kappa-sq",
        "2,4,1",
        "--r",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["oracle"], "zero");
    assert_eq!(report["theorem"], "feasible");
    assert_eq!(report["agree"], true);
    let inputs: VerifyInputs = serde_json::from_value(report["inputs"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&inputs).unwrap(), report["inputs"]);
}

#[test]
fn verify_reports_disagreement_free_negative_case() {
    let (code, report) = run_json(&[
        "verify",
        "--c",
        "1",
        "--eps",
        "1,1,-1",
        "--kappa-sq",
        "2,5",
        "--r",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["oracle"], "nonzero");
    assert_eq!(report["theorem"], "infeasible");
    assert_eq!(report["agree"], true);
}

#[test]
fn exit_codes_are_stable() {
    // invalid signature: two negatives in an index-one metric
    let out = bin()
        .args(["classify", "--eps", "-1,-1", "--m", "3", "--t", "1", "--c", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // unsupported order combination
    let out = bin()
        .args(["classify", "--eps", "1,1,-1,1", "--c", "1", "--r", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // drift bound exceeded: coarse integration against a tight bound
    let out = bin()
        .args([
            "synthesize",
            "--m",
            "3",
            "--t",
            "1",
            "--eps",
            "1,1,-1",
            "--kappas",
            "2,1",
            "--s-range",
            "0:50",
            "--samples",
            "26",
            "--ode-rel",
            "1e-2",
            "--ode-abs",
            "1e-2",
            "--drift-max",
            "1e-9",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn synthesize_writes_csv_and_diagnostics() {
    let dir = std::env::temp_dir().join("polyfrenet-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("curve.csv");
    let json = dir.join("diag.json");
    let out = bin()
        .args([
            "synthesize",
            "--m",
            "3",
            "--t",
            "1",
            "--eps",
            "1,1,-1",
            "--kappas",
            "1,1",
            "--s-range",
            "0:10",
            "--samples",
            "51",
            "--r",
            "2,3,4",
        ])
        .arg("--csv")
        .arg(&csv)
        .arg("--json")
        .arg(&json)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let header = std::fs::read_to_string(&csv).unwrap();
    let mut lines = header.lines();
    assert_eq!(
        lines.next().unwrap(),
        "s,x0,x1,x2,f1_0,f1_1,f1_2,f2_0,f2_1,f2_2,f3_0,f3_1,f3_2,drift,defect"
    );
    assert_eq!(lines.count(), 51);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
}

#[test]
fn synthesize_accepts_explicit_initial_data() {
    // a boosted orthonormal frame in the flat index-1 metric
    let out = bin()
        .args([
            "synthesize",
            "--m",
            "3",
            "--t",
            "1",
            "--eps",
            "1,1,-1",
            "--kappas",
            "1,1",
            "--s-range",
            "0:5",
            "--samples",
            "11",
            "--point",
            "1,0,0",
            "--frame",
            "0,1,0;0.75,0,1.25;1.25,0,0.75",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // a non-orthonormal frame is rejected before integration
    let out = bin()
        .args([
            "synthesize", "--m", "3", "--t", "1", "--eps", "1,1,-1", "--kappas", "1,1",
            "--frame", "0,1,0;1,0,1;0,0,1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ruled_mode_emits_residual_columns() {
    let out = bin()
        .args([
            "synthesize", "--ruled", "--k0", "0.5", "--s-range", "0:1", "--samples", "51",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!(report["summary"]["max_res1"].as_f64().unwrap() < 1e-8);
    assert!(report["summary"]["max_res2"].as_f64().unwrap() < 1e-8);
}

#[test]
fn sweep_grid_agrees_everywhere() {
    let out = bin()
        .args([
            "sweep",
            "--model",
            "spaceform",
            "--n",
            "3",
            "--eps",
            "1,1,-1",
            "--c",
            "-1,1",
            "--r",
            "2,3",
            "--kappa-sq-range",
            "1/2:3:1/2",
            "--tau-sq-range",
            "1/2:3:1/2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let agree = line.rsplit(',').next().unwrap();
        assert_eq!(agree, "1", "row: {line}");
        rows += 1;
    }
    assert_eq!(rows, 2 * 2 * 6 * 6);
}

#[test]
fn rw_sweep_hits_exactly_the_predicted_exponent() {
    let out = bin()
        .args([
            "sweep", "--model", "rw", "--r", "3", "--lambda-range", "1/12:11/12:1/12",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let feasible: Vec<&str> = text
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(2) == Some("1"))
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(feasible, vec!["2/3"]);
}

#[test]
fn sweep_respects_the_point_cap() {
    let out = bin()
        .args([
            "sweep",
            "--model",
            "spaceform",
            "--n",
            "3",
            "--eps",
            "1,1,-1",
            "--kappa-sq-range",
            "1/4:10:1/4",
            "--tau-sq-range",
            "1/4:10:1/4",
            "--max-points",
            "10",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn env_var_overrides_the_residual_gate() {
    // a near-solution whose residual (~2e-7) sits under the default gate but
    // over an impossible one supplied through the environment
    let args = [
        "synthesize",
        "--m",
        "3",
        "--t",
        "1",
        "--eps",
        "1,1,-1",
        "--kappas",
        "1.0000001,1",
        "--s-range",
        "0:5",
        "--samples",
        "21",
        "--r",
        "2",
        "--drift-max",
        "1e-6",
    ];
    let out = bin().args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bin().args(args).env("POLYFRENET_TOL", "1e-30").output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn config_file_sets_tolerances() {
    let dir = std::env::temp_dir().join("polyfrenet-cli-config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("tols.conf");
    std::fs::write(&cfg, "# loose everything\nresidual_max = 1e30\ndrift_max = 1e30\n").unwrap();
    let out = bin()
        .args([
            "synthesize",
            "--m",
            "3",
            "--t",
            "1",
            "--eps",
            "1,1,-1",
            "--kappas",
            "1.5,1",
            "--s-range",
            "0:5",
            "--samples",
            "21",
            "--r",
            "2",
        ])
        .arg("--config")
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
