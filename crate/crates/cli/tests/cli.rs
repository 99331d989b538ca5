//! End-to-end checks of the `fairsample` binary: subcommands, file output,
//! exit codes, and byte-identical reruns.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fairsample(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairsample"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("fairsample-cli-{}-{name}", std::process::id()));
    path
}

#[test]
fn analytic1d_emits_parseable_json_with_expected_fields() {
    let out = fairsample(&["analytic1d", "--rounds", "5000", "--trace-every", "500"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((doc["c_fair"].as_f64().unwrap() - 12.2 / 2.3).abs() < 1e-9);
    assert!(doc["lambda_interval"].is_array());
    assert!(doc["curve"].as_array().unwrap().len() >= 2);
    assert!(doc["recurrence"].as_array().unwrap().len() >= 2);
    assert!(doc["limit"]["c"].is_number());
}

#[test]
fn analytic1d_reruns_are_byte_identical_and_csv_works() {
    let args = [
        "analytic1d",
        "--p",
        "0.3",
        "--rounds",
        "20000",
        "--trace-every",
        "1000",
    ];
    let a = fairsample(&args);
    let b = fairsample(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let csv = fairsample(&["analytic1d", "--rounds", "1000", "--format", "csv"]);
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("section,index,lambda,c\n"), "{text}");
}

#[test]
fn invalid_spec_exits_with_contract_code() {
    // t0 = t1 violates the interval ordering chain
    let out = fairsample(&["analytic1d", "--t0", "7.0", "--t1", "7.0"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid spec"));
}

#[test]
fn missing_input_file_exits_with_io_code() {
    let out = fairsample(&[
        "sweep",
        "--data",
        "/nonexistent/data.csv",
        "--p-grid",
        "0,1",
        "--seeds",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn unknown_flags_exit_with_usage_code() {
    let out = fairsample(&["sweep", "--bogus-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oned_runs_quickly_and_reports_overlays() {
    let out = fairsample(&[
        "oned",
        "--dist",
        "uniform",
        "--p",
        "0",
        "--rounds",
        "500",
        "--validation",
        "1000",
        "--record-every",
        "100",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // U(0,10)/U(6,12) with t0=7, t1=9: c_fair = (0.7 + 1.5)/(1/10 + 1/6)
    assert!((doc["c_fair"].as_f64().unwrap() - 8.25).abs() < 1e-9);
    assert!(doc["risk_minimizer"].is_number());
    assert!(doc["trace"].as_array().unwrap().len() >= 5);
}

#[test]
fn sweep_accepts_a_json_config_file() {
    let config = serde_json::json!({
        "source": {
            "source": "uniform_mixture",
            "spec": {
                "alpha0": 0.0, "beta0": 10.0, "t0": 4.0,
                "alpha1": 1.0, "beta1": 14.0, "t1": 7.0,
                "lambda_star": 0.85
            },
            "n": 1200
        },
        "data_seed": 0,
        "p_grid": [0.0, 1.0],
        "seeds": [0, 1],
        "sizes": { "train": 30, "pool": 500, "validation": 250, "test": 250 },
        "rounds": 40,
        "metric": "zero-one-error",
        "update": { "mode": "batch_retrain" },
        "trainer": { "family": "threshold", "loss": "hinge" },
        "replacement": "without"
    });
    let path = temp_path("sweep-config.json");
    std::fs::write(&path, serde_json::to_string_pretty(&config).unwrap()).unwrap();
    let out_path = temp_path("sweep-out.json");
    let out = fairsample(&[
        "sweep",
        "--config",
        path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["points"].as_array().unwrap().len(), 2);
    std::fs::remove_file(&path).ok();
    std::fs::remove_file(&out_path).ok();
}

/// Full CSV round trip at the source experiment's scale: generate the
/// nine-ward dataset, write it as CSV, and replay it through the binary.
#[test]
fn replay_ingests_a_full_scale_ward_csv() {
    use fairsample_cli::harness::source::full_scale_wards;
    use fairsample_core::data::synth_wards;

    let spec = full_scale_wards();
    let data = synth_wards(&spec, 0).unwrap();
    assert_eq!(data.len(), 22_750);
    assert_eq!(data.group_count(), 9);
    let expected_sizes = [2548, 2697, 1489, 2998, 1477, 2945, 2732, 2970, 2894];
    for (w, &n) in expected_sizes.iter().enumerate() {
        assert_eq!(data.group_size(w), n);
    }

    let csv_path = temp_path("wards.csv");
    let mut text = String::from("x,label,ward,ts\n");
    let ts = data.timestamps().unwrap();
    for (i, p) in data.points().iter().enumerate() {
        let label = if p.y == fairsample_core::data::Label::Pos { 1 } else { 0 };
        text.push_str(&format!("{},{},{},{}\n", p.x[0], label, p.a, ts[i]));
    }
    std::fs::write(&csv_path, text).unwrap();

    let out_path = temp_path("replay-out.json");
    let out = fairsample(&[
        "replay",
        "--data",
        csv_path.to_str().unwrap(),
        "--feature-cols",
        "x",
        "--label-col",
        "label",
        "--group-col",
        "ward",
        "--timestamp-col",
        "ts",
        "--strategies",
        "timestamp,adaptive",
        "--seeds",
        "1",
        "--train",
        "200",
        "--val",
        "1000",
        "--test",
        "5000",
        "--max-rounds",
        "300",
        "--retrain-every",
        "20",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["rounds"].as_u64(), Some(300));
    let runs = doc["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 1);
    assert_eq!(runs[0]["strategies"].as_array().unwrap().len(), 2);
    // nine per-group error entries per recorded round
    let first = &runs[0]["strategies"][0]["group_error"][0];
    assert_eq!(first.as_array().unwrap().len(), 9);
    std::fs::remove_file(&csv_path).ok();
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn check_bounds_reports_arm_counts() {
    let out = fairsample(&[
        "check-bounds",
        "--lambda-star",
        "0.6",
        "--seeds",
        "10",
        "--rounds",
        "50",
        "--pool-size",
        "1000",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["per_seed"].as_array().unwrap().len(), 10);
    let total = doc["within_bound"].as_u64().unwrap()
        + doc["samples_higher"].as_u64().unwrap()
        + doc["violated"].as_u64().unwrap();
    assert_eq!(total, 10);
}
