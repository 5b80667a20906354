use std::process::{Command, Output};

fn fdstbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdstbc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn without_seconds(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    v.as_object_mut().unwrap().remove("seconds");
    v
}

#[test]
fn list_codes_prints_seven_ids() {
    let o = fdstbc(&["list-codes"]);
    assert!(o.status.success());
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    assert_eq!(ids, ["s4x2", "s6x2", "s8x2", "s12x2", "sr4x2", "perf4-punct", "perf6-punct"]);
}

#[test]
fn exhaustive_mindet_reports_one_over_four_hundred() {
    let o = fdstbc(&["mindet", "--code", "s4x2", "--qam", "4", "--mode", "exhaustive"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let delta = v["delta_min"].as_f64().unwrap();
    assert!((delta - 0.0025).abs() < 1e-12);
    assert_eq!(v["unnorm_min"].as_f64().unwrap().round(), 6400.0);
    assert_eq!(v["mode"], "exhaustive");
    assert_eq!(v["achieving_diff"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_s6x2_succeeds() {
    let o = fdstbc(&["verify", "--code", "s6x2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn bad_arguments_exit_with_two() {
    for args in [
        &["mindet", "--code", "s9x2", "--qam", "4"][..],
        &["mindet", "--code", "s4x2", "--qam", "32"],
        &["simulate", "--code", "s4x2", "--qam", "4", "--snr-db", "6:2", "--trials", "10"],
        &["simulate", "--code", "s4x2", "--qam", "4", "--snr-db", "6:2:8", "--trials", "0"],
        &["simulate", "--code", "perf4-punct", "--qam", "4", "--snr-db", "6:2:8", "--trials", "5"],
        &["nvd-scan", "--code", "s4x2", "--samples", "0"],
        &["decode-selftest", "--code", "s6x2", "--qam", "4"],
    ] {
        assert_eq!(fdstbc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn outputs_are_reproducible() {
    let args = ["mindet", "--code", "s8x2", "--qam", "4", "--mode", "sampled", "--samples", "3000", "--seed", "4"];
    let a = fdstbc(&args);
    let b = fdstbc(&[&["--threads", "2"][..], &args].concat());
    assert_eq!(without_seconds(&stdout(&a)), without_seconds(&stdout(&b)));

    let sim = ["simulate", "--code", "s4x2", "--qam", "4", "--snr-db", "4:4:8", "--trials", "700", "--seed", "3"];
    let a = fdstbc(&sim);
    let b = fdstbc(&[&["--threads", "3"][..], &sim].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let csv = stdout(&a);
    assert_eq!(csv.lines().next().unwrap(), "code,constellation,decoder,snr_db,trials,errors,cer,mean_metric_evals,seed");
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("fdstbc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s4.json");
    let o = fdstbc(&["describe", "--code", "s4x2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n_t"], 4);
    assert_eq!(v["weight_matrices"].as_array().unwrap().len(), 16);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn nvd_scan_and_selftest_pass() {
    let o = fdstbc(&["nvd-scan", "--code", "s4x2", "--box", "2", "--samples", "50", "--seed", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["divisor"], 25);

    let o = fdstbc(&["decode-selftest", "--code", "s4x2", "--qam", "4", "--instances", "5", "--seed", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agreements"], 5);
}
