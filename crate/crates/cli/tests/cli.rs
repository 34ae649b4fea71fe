use std::process::{Command, Output};

use serde_json::Value;

fn syzygy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzygy"))
        .args(args)
        .env_remove("SYZYGY_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = syzygy(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("json output")
}

#[test]
fn twisted_cubic_table() {
    let v = json(&["betti", "--object", "rnc", "--genus", "3"]);
    assert_eq!(v["table"]["grid"][1][1], 3);
    assert_eq!(v["table"]["grid"][2][1], 2);
    assert_eq!(v["np"][1]["holds"], true);
}

#[test]
fn tangent_genus_three_has_no_quadrics() {
    let v = json(&["betti", "--object", "tangent", "--genus", "3", "--pmax", "2"]);
    assert_eq!(v["table"]["grid"][1][1], 0);
}

#[test]
fn elliptic_quartic_text() {
    let o = syzygy(&["betti", "--object", "ci"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("N_1: holds"), "{text}");
    assert!(text.contains("N_2: fails (b[2][2] = 1)"), "{text}");
}

#[test]
fn custom_quadrics_and_csv() {
    let o = syzygy(&[
        "betti", "--object", "ci", "--quadric", "Z0*Z1", "--quadric", "Z2*Z3", "--pmax", "2", "--format", "csv",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("p,q,dim\n0,0,1\n"));
    let bad = syzygy(&["betti", "--object", "ci", "--quadric", "Z0*Z1", "--quadric", "Z0*Z2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn folk_passes() {
    let v = json(&["folk", "--genus", "5", "--field", "prime:1000003"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["field"], "prime:1000003");
    let v = json(&["folk", "--genus", "4"]);
    assert_eq!(v["entries"][1]["direct"], 0);
    assert_eq!(v["pass"], true);
}

#[test]
fn folk_consensus() {
    let v = json(&["folk", "--genus", "7", "--field", "consensus:2", "--seed", "3"]);
    assert_eq!(v["agree"], true);
    assert_eq!(v["runs"].as_array().unwrap().len(), 2);
    assert_eq!(v["pass"], true);
}

#[test]
fn reports_are_reproducible() {
    let a = syzygy(&["folk", "--genus", "6", "--field", "consensus:2", "--format", "json"]);
    let b = syzygy(&["folk", "--genus", "6", "--field", "consensus:2", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let t = json(&["folk", "--genus", "4", "--timings"]);
    assert!(t["timings_ms"].is_array());
}

#[test]
fn warm_cache_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["betti", "--object", "tangent", "--genus", "4", "--format", "json"];
    let cold = Command::new(env!("CARGO_BIN_EXE_syzygy"))
        .args(args)
        .env("SYZYGY_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(cold.status.success());
    assert!(dir.path().join("tangent-g4-q3-rationals/module.json").exists());
    let warm = Command::new(env!("CARGO_BIN_EXE_syzygy"))
        .args(args)
        .args(["--cache-dir", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, syzygy(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(syzygy(&["folk", "--genus", "5", "--field", "prime:12"]).status.code(), Some(2));
    assert_eq!(syzygy(&["folk", "--genus", "8"]).status.code(), Some(2));
    assert_eq!(syzygy(&["folk", "--genus", "5", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(syzygy(&["mesh", "--genus", "4"]).status.code(), Some(2));
    assert_eq!(syzygy(&["koszulmodule"]).status.code(), Some(2));
    assert_eq!(syzygy(&["betti", "--object", "tangent", "--genus", "2"]).status.code(), Some(2));
}

#[test]
fn sweeps() {
    let o = syzygy(&["hermite", "--amax", "12"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("91 cases, 0 failed"));
    let v = json(&["euler", "--nmax", "12"]);
    assert!(v["identities"].as_array().unwrap().iter().all(|x| x["value"] == "0"));
    assert_eq!(v["finishers"][0]["agree"], true);
    let w = json(&["wahl", "--imax", "3"]);
    assert_eq!(w["rows"][2]["c"], "4");
}

#[test]
fn koszul_module_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("instance.json");
    std::fs::write(&path, r#"{"dim": 4, "forms": [[[0, 1, "1"]]], "qmax": 1}"#).unwrap();
    let v = json(&["koszulmodule", "--instance", path.to_str().unwrap(), "--probe-trials", "20"]);
    assert!(v["modules"][0]["dim"].as_u64().unwrap() > 0);
    assert!(v["probe"]["witness"].is_array());
    let cw = json(&["koszulmodule", "--co-wahl", "2", "--probe-trials", "100"]);
    assert_eq!(cw["modules"][1]["dim"], 0);
    assert!(cw["probe"]["witness"].is_null());
}

#[test]
fn mesh_grid() {
    let o = syzygy(&["mesh", "--genus", "3", "--samples", "64"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 64 * 64);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 2 * 63 * 63);
}
