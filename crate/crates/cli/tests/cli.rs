//! End-to-end tests spawning the real binary.

use std::process::{Command, Output};

fn pisano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pisano"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn pisano_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pisano"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn out(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn period_k_fibonacci() {
    let o = pisano(&["period", "-k", "1", "-m", "10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(out(&o), "60\n");
    let o = pisano(&["period", "-k", "4", "-m", "2"]);
    assert_eq!(out(&o), "2\n");
}

#[test]
fn period_general_recurrence_impure() {
    // Jacobsthal mod 6: eventual period 6, preperiod 1 (2 is not a unit)
    let o = pisano(&["period", "-a", "1", "-b", "2", "-c", "0", "-d", "1", "-m", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(out(&o), "6\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("preperiod: 1"));
}

#[test]
fn period_negative_coefficients() {
    // a = -3, b = -1 mod 10: same period as a = 3 by symmetry of the state map
    let o = pisano(&["period", "-a", "-3", "-b", "-1", "-c", "0", "-d", "1", "-m", "10"]);
    assert_eq!(code(&o), 0);
    let text = out(&o);
    let period: u64 = text.trim().parse().expect("numeric period");
    assert!(period >= 1);
}

#[test]
fn period_both_agrees() {
    let o = pisano(&["period", "-k", "7", "-m", "360", "--both"]);
    assert_eq!(code(&o), 0);
    let text = out(&o);
    assert!(text.contains("structured: "));
    assert!(text.contains("oracle: "));
    let lines: Vec<&str> = text.lines().collect();
    let s = lines[0].strip_prefix("structured: ").unwrap();
    let r = lines[1].strip_prefix("oracle: ").unwrap();
    assert_eq!(s, r);
}

#[test]
fn period_json_shape() {
    let o = pisano(&["period", "-k", "1", "-m", "10", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out(&o)).unwrap();
    assert_eq!(doc["period"], 60);
    assert_eq!(doc["pure"], true);
}

#[test]
fn period_invalid_args_exit_2() {
    assert_eq!(code(&pisano(&["period", "-k", "1"])), 2); // missing -m
    assert_eq!(code(&pisano(&["period", "-k", "1", "-m", "1"])), 2); // m < 2
    assert_eq!(code(&pisano(&["period", "-k", "0", "-m", "5"])), 2); // K < 1
    assert_eq!(code(&pisano(&["period", "-m", "5"])), 2); // no recurrence
    assert_eq!(code(&pisano(&["period", "-k", "1", "-a", "2", "-m", "5"])), 2);
    assert_eq!(code(&pisano(&["period", "-a", "1", "-b", "2", "-m", "5"])), 2); // partial params
    assert_eq!(
        code(&pisano(&["period", "-a", "1", "-b", "2", "-c", "0", "-d", "1", "-m", "5", "--both"])),
        2
    );
}

#[test]
fn trajectory_chains() {
    let o = pisano(&["trajectory", "-k", "1", "-m", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(out(&o), "2 → 3 → 8 → 12 → 24 [fixed] T=4\n");
    let o = pisano(&["trajectory", "-k", "3", "-m", "2"]);
    assert_eq!(out(&o), "2 → 3 → 2 [2-cycle] P=0\n");
    let o = pisano(&["trajectory", "-k", "1", "-m", "24"]);
    assert_eq!(out(&o), "24 [fixed] T=0\n");
}

#[test]
fn trajectory_exhaustion_exits_5() {
    let o = pisano(&["trajectory", "-k", "1", "-m", "2", "--max-iters", "1"]);
    assert_eq!(code(&o), 5);
    assert_eq!(out(&o), "2 → 3 [exhausted]\n");
}

#[test]
fn trajectory_json() {
    let o = pisano(&["trajectory", "-k", "1", "-m", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out(&o)).unwrap();
    assert_eq!(doc["terminal"], "fixed");
    assert_eq!(doc["value"], 24);
    assert_eq!(doc["iterations"], 4);
    assert_eq!(doc["steps"], serde_json::json!([2, 3, 8, 12, 24]));
}

#[test]
fn fixed_points_with_family() {
    let o = pisano(&["fixed-points", "-k", "1", "--bound", "150"]);
    assert_eq!(out(&o), "24 120 | family: 24×5^j\n");
    let o = pisano(&["fixed-points", "-k", "8", "--bound", "100"]);
    assert_eq!(out(&o), "2 68 | family: 2 or 4×17^{j+1}\n");
    // K = 2: family is exactly the powers of two the enumeration lists
    let o = pisano(&["fixed-points", "-k", "2", "--bound", "10"]);
    assert_eq!(out(&o), "2 4 8\n");
}

#[test]
fn fixed_points_json() {
    let o = pisano(&["fixed-points", "-k", "3", "--bound", "200", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out(&o)).unwrap();
    assert_eq!(doc["fixed_points"], serde_json::json!([6, 156]));
    assert_eq!(doc["family"], "6 or 12×13^{j+1}");
    assert_eq!(doc["category"], "THREE_MOD6");
    assert!(doc["family_mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn classify_output() {
    let o = pisano(&["classify", "-k", "9"]);
    assert_eq!(
        out(&o),
        "K = 9: K ≡ 3 (mod 6) [THREE_MOD6]; fixed points: 6 or 12×5^{j1}×17^{j2} (j1+j2 ≥ 1)\n"
    );
    let o = pisano(&["classify", "-k", "16", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out(&o)).unwrap();
    assert_eq!(doc["category"], "ZERO_MOD4");
    assert_eq!(doc["family"], "2 or 4×5^{j1}×13^{j2} (j1+j2 ≥ 1)");
}

#[test]
fn table_families() {
    let o = pisano(&["table"]);
    let text = out(&o);
    let first = text.lines().next().unwrap();
    assert_eq!(first, "1\tPM1_MOD6\t24×5^j");
    assert_eq!(text.lines().count(), 24);
    let o = pisano(&["table", "--k", "8"]);
    assert_eq!(out(&o), "8\tZERO_MOD4\t2 or 4×17^{j+1}\n");
}

#[test]
fn table_periods_rows() {
    let o = pisano(&["table", "--kind", "periods", "--seq", "fibonacci,jacobsthal"]);
    let text = out(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("m\t2\t3\t"));
    assert_eq!(
        lines[1],
        "fibonacci\t3\t8\t6\t20\t24\t16\t12\t24\t60\t10\t24\t28\t48\t40\t24\t36\t24\t18\t60\t16\t30\t48\t24"
    );
    assert!(lines[2].starts_with("jacobsthal\t1\t6\t2\t4\t6\t6\t2\t18\t4\t10\t6\t12\t"));
    assert_eq!(code(&pisano(&["table", "--kind", "periods", "--seq", "unknown"])), 2);
}

#[test]
fn verify_final_table_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let o = pisano(&["verify", "--suites", "final-table", "--out", out_dir]);
    assert_eq!(code(&o), 0); // statement discrepancy does not fail the run
    assert!(out(&o).contains("final-table: 91/92 passed"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 statement discrepancies"));
    let json = std::fs::read_to_string(dir.path().join("final-table.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["checked"], 92);
    assert_eq!(doc["passed"], 91);
    assert_eq!(
        doc["violations"][0]["classification"],
        "paper-statement-discrepancy"
    );
    let csv = std::fs::read_to_string(dir.path().join("final-table.csv")).unwrap();
    assert!(csv.starts_with("suite,record,k,m,"));
    assert!(csv.contains("summary"));
}

#[test]
fn verify_json_stdout_only_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = pisano(&[
        "verify", "--suites", "parity", "--k", "1..3", "--m", "2..40", "--out",
        dir.path().to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let docs: serde_json::Value = serde_json::from_str(&out(&o)).unwrap();
    let arr = docs.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["suite"], "parity");
    assert_eq!(arr[0]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    assert_eq!(code(&pisano(&["verify", "--suites", "nonsense", "--out", out_dir])), 2);
    assert_eq!(
        code(&pisano(&["verify", "--m", "9..2", "--suites", "parity", "--out", out_dir])),
        2
    );
    assert_eq!(
        code(&pisano_env(
            &["verify", "--suites", "parity", "--m", "2..20", "--out", out_dir],
            &[("PISANO_PARALLELISM", "zebra")],
        )),
        2
    );
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{not json").unwrap();
    assert_eq!(code(&pisano(&["verify", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn verify_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    std::fs::write(
        &cfg,
        r#"{"k_range":[2,2],"m_range":[2,64],"suites":["pell"],"parallelism":2,"max_iters":200}"#,
    )
    .unwrap();
    let o = pisano(&[
        "verify", "--config", cfg.to_str().unwrap(), "--out",
        dir.path().join("reports").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(out(&o).contains("pell: 63/63 passed"));
}

#[test]
fn verify_reports_deterministic_across_parallelism() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out_dir: &str| {
        vec![
            "verify".to_string(), "--suites".into(), "parity,lcm-law,table1".into(),
            "--k".into(), "1..4".into(), "--m".into(), "2..80".into(),
            "--out".into(), out_dir.to_string(),
        ]
    };
    let d1 = dir.path().join("p1");
    let d4 = dir.path().join("p4");
    let a1: Vec<String> = args(d1.to_str().unwrap());
    let a4: Vec<String> = args(d4.to_str().unwrap());
    let o1 = pisano_env(
        &a1.iter().map(String::as_str).collect::<Vec<_>>(),
        &[("PISANO_PARALLELISM", "1")],
    );
    let o4 = pisano_env(
        &a4.iter().map(String::as_str).collect::<Vec<_>>(),
        &[("PISANO_PARALLELISM", "4")],
    );
    assert_eq!(code(&o1), 0);
    assert_eq!(code(&o4), 0);
    for name in ["parity", "lcm-law", "table1"] {
        for ext in ["json", "csv"] {
            let f1 = std::fs::read(d1.join(format!("{name}.{ext}"))).unwrap();
            let f4 = std::fs::read(d4.join(format!("{name}.{ext}"))).unwrap();
            assert_eq!(f1, f4, "{name}.{ext} differs across parallelism");
        }
    }
}

#[test]
fn no_subcommand_exits_2() {
    assert_eq!(code(&pisano(&[])), 2);
    assert_eq!(code(&pisano(&["frobnicate"])), 2);
}
