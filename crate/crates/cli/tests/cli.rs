use assert_cmd::Command;
use predicates::prelude::*;

fn mslcob() -> Command {
    Command::cargo_bin("mslcob").unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = mslcob().args(args).args(["--format", "json"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn msl_table_over_c() {
    let v = json(&["msl", "table", "--field", "c"]);
    let groups: Vec<String> =
        v.as_array().unwrap().iter().map(|r| r["symbolic"].as_str().unwrap().to_string()).collect();
    assert_eq!(groups[0], "GW(k)");
    assert_eq!(groups[8], "GW(k)^2 ⊕ Z^5");
    assert_eq!(v[8]["group"]["free_rank"], 7);
    assert_eq!(v[9]["group"]["invariant_factors"], serde_json::json!([2, 2]));
}

#[test]
fn msl_group_over_r() {
    let v = json(&["msl", "group", "--field", "r", "--n", "8"]);
    assert_eq!(v["free_rank"], 9);
    assert_eq!(v["invariant_factors"], serde_json::json!([]));
    assert_eq!(v["n"], 8);
}

#[test]
fn out_of_range_degree_is_a_usage_error() {
    mslcob()
        .args(["msl", "group", "--field", "c", "--n", "99"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("outside the supported range"));
}

#[test]
fn usage_errors() {
    mslcob().arg("bogus").assert().code(2);
    mslcob().args(["msl", "table", "--field", "q"]).assert().code(2);
    mslcob().args(["-N", "40", "msl", "table"]).assert().code(2);
    mslcob().args(["--format", "yaml", "msl", "table"]).assert().code(2);
    mslcob().args(["verify", "--suite", "nope"]).assert().code(2);
    mslcob().args(["op", "apply", "--name", "partial", "--class", "CPx"]).assert().code(2);
}

#[test]
fn cf_homology_rows() {
    let v = json(&["-N", "9", "cf", "homology"]);
    let h: Vec<String> = v.as_array().unwrap().iter().map(|r| serde_json::to_string(&r["H"]).unwrap()).collect();
    assert_eq!(h.len(), 9);
    assert_eq!(v[8]["H"]["invariant_factors"], serde_json::json!([2, 2]));
    assert_eq!(v[4]["rank_Z"], 2);
    assert_eq!(v[1]["H"]["invariant_factors"], serde_json::json!([]));
}

#[test]
fn operation_anchors() {
    mslcob()
        .args(["op", "apply", "--name", "partial", "--class", "CP1"])
        .assert()
        .success()
        .stdout("partial(CP1) = 2  (degree 0)\n");
    mslcob()
        .args(["op", "apply", "--name", "delta", "--class", "CP1^2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("= -8"));
    mslcob()
        .args(["op", "apply", "--name", "partial", "--class", "CP1*CP1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("= 0 "));
}

#[test]
fn quartic_surface() {
    let v = json(&["charnum", "hypersurface", "--ambient", "3", "--degree", "4"]);
    assert_eq!(v["variety"]["tangent_numbers"]["(2)"], "24");
    assert_eq!(v["variety"]["calabi_yau"], true);
    assert_eq!(v["generator_check"]["pass"], true);
    let out = mslcob().args(["charnum", "hypersurface", "--ambient", "3", "--degree", "4", "--json"]).output().unwrap();
    assert!(serde_json::from_slice::<serde_json::Value>(&out.stdout).is_ok());
}

#[test]
fn witt_and_kq_tables() {
    let v = json(&["witt", "table", "--field", "fq3"]);
    assert_eq!(v[1]["name"], "W");
    assert_eq!(v[1]["group"]["invariant_factors"], serde_json::json!([4]));
    let csv = mslcob().args(["kq", "table", "--field", "c", "--max-degree", "4", "--format", "csv"]).output().unwrap();
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,generator,group"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn verify_suites() {
    mslcob()
        .args(["-N", "8", "verify", "--suite", "cf-pattern"])
        .assert()
        .success()
        .stdout(predicate::str::ends_with("PASS\n"));
    mslcob().args(["verify", "--suite", "table"]).assert().success();
    mslcob().args(["verify", "--suite", "leibniz", "--max-degree", "6"]).assert().success();
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# example\ntruncation=6\nfield=r\nformat=json\n").unwrap();
    let out = mslcob().args(["--config", cfg.to_str().unwrap(), "msl", "group", "--n", "4"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["field"]["kind"], "RealClosed");
    mslcob().args(["--config", cfg.to_str().unwrap(), "msl", "group", "--n", "8"]).assert().code(2);
    mslcob().args(["--config", cfg.to_str().unwrap(), "-N", "8", "msl", "group", "--n", "8"]).assert().success();
    mslcob().args(["--config", "/nonexistent/run.cfg", "msl", "table"]).assert().code(1);
}

#[test]
fn dump_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        mslcob().args(["-N", "6", "dump", "--out", d.path().to_str().unwrap()]).assert().success();
    }
    let mut names: Vec<String> =
        std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for n in &names {
        assert_eq!(std::fs::read(a.path().join(n)).unwrap(), std::fs::read(b.path().join(n)).unwrap(), "{n}");
    }
    let delta = std::fs::read_to_string(a.path().join("delta_matrices.csv")).unwrap();
    assert!(delta.starts_with("degree,row,col,entry\n"));
}

#[test]
fn dump_to_unwritable_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    std::fs::write(&file, "x").unwrap();
    mslcob().args(["-N", "4", "dump", "--out", file.to_str().unwrap()]).assert().code(1);
}

#[test]
fn json_output_is_stable() {
    let a = mslcob().args(["msl", "table", "--field", "fq1", "--format", "json"]).output().unwrap().stdout;
    let b = mslcob().args(["msl", "table", "--field", "fq1", "--format", "json"]).output().unwrap().stdout;
    assert_eq!(a, b);
}
