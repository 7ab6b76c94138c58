use assert_cmd::Command;
use std::path::Path;

fn bin() -> Command {
    Command::cargo_bin("twinheart").unwrap()
}

fn generate(dir: &Path, m: u32, n: u32, p: u32) -> std::path::PathBuf {
    let out = dir.join(format!("n{m}{n}{p}.json"));
    bin()
        .args([
            "generate",
            "nakayama",
            "--m",
            &m.to_string(),
            "--n",
            &n.to_string(),
            "--p",
            &p.to_string(),
            "--out",
        ])
        .arg(&out)
        .assert()
        .success();
    out
}

#[test]
fn generate_then_validate_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), 1, 4, 2);
    bin().arg("validate").arg(&file).assert().code(0);
}

#[test]
fn validate_rejects_corrupted_file_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), 1, 4, 2);
    let text = std::fs::read_to_string(&file).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // flip a shift entry
    let shift = v["tri"]["shift_obj"].as_array_mut().unwrap();
    shift.swap(0, 1);
    std::fs::write(&file, serde_json::to_string(&v).unwrap()).unwrap();
    bin().arg("validate").arg(&file).assert().code(1);
}

#[test]
fn missing_file_is_input_error() {
    bin().args(["validate", "/nonexistent/substrate.json"]).assert().code(3);
}

#[test]
fn unparseable_file_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("junk.json");
    std::fs::write(&file, "{ not json").unwrap();
    bin().arg("validate").arg(&file).assert().code(3);
}

#[test]
fn bad_twin_filter_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), 1, 2, 2);
    bin()
        .arg("analyze")
        .arg(&file)
        .args(["--twin-filter", "bogus"])
        .assert()
        .code(3);
}

#[test]
fn unknown_subcommand_is_input_error() {
    bin().arg("frobnicate").assert().code(3);
}

#[test]
fn enumerate_pairs_lists_trivial_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), 1, 3, 2);
    let out = bin().arg("enumerate-pairs").arg(&file).assert().code(0);
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("2 cotorsion pairs"), "{stdout}");
}

#[test]
fn analyze_writes_report_and_report_replays_it() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), 2, 3, 2);
    let out_dir = dir.path().join("runs");
    let first = bin()
        .arg("analyze")
        .arg(&file)
        .env("TWINHEART_OUT_DIR", &out_dir)
        .assert()
        .code(0);
    let stdout = String::from_utf8(first.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("twin"), "{stdout}");

    let run_dir = out_dir.join("fixture-n232");
    assert!(run_dir.join("report.json").exists());
    assert!(run_dir.join("summary.txt").exists());
    bin().arg("report").arg(&run_dir).assert().code(0);

    // re-running the analysis produces byte-identical report files
    let report1 = std::fs::read(run_dir.join("report.json")).unwrap();
    bin()
        .arg("analyze")
        .arg(&file)
        .env("TWINHEART_OUT_DIR", &out_dir)
        .assert()
        .code(0);
    let report2 = std::fs::read(run_dir.join("report.json")).unwrap();
    assert_eq!(report1, report2, "reports must be deterministic");
}

#[test]
fn config_file_overrides_are_honored() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), 1, 2, 2);
    let config = dir.path().join("cfg.json");
    std::fs::write(&config, r#"{"max_summands": 2}"#).unwrap();
    bin()
        .arg("--config")
        .arg(&config)
        .arg("analyze")
        .arg(&file)
        .assert()
        .code(0);
    // malformed config is an input error
    std::fs::write(&config, r#"{"unknown_knob": 1}"#).unwrap();
    bin()
        .arg("--config")
        .arg(&config)
        .arg("analyze")
        .arg(&file)
        .assert()
        .code(3);
}
