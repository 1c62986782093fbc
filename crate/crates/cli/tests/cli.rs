use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dshuffle"))
        .args(args)
        .env_remove("DSHUFFLE_PREC")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("report is JSON")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dshuffle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_prop_lists_every_input() {
    let o = run(&["verify", "prop", "--which", "2.3", "--max-deg", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["schema"], "report.v1");
    assert_eq!(r["verdict"], true);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1 + 2 + 4 + 8);
    assert!(checks.iter().all(|c| c["equal"] == true));
    assert_eq!(checks[3]["input"], "e0e0");
}

#[test]
fn verify_betti_prop_with_random_inputs() {
    let o = run(&["verify", "prop", "--which", "2.2", "--max-deg", "2", "--random", "5", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"].as_array().unwrap().len(), 17 + 5);
}

#[test]
fn zeta_csv_row() {
    let o = run(&["mzv", "--comp", "2", "--prec", "128"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["composition", "weight", "value", "error_bound"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][0], "2");
    assert!(rows[0][2].starts_with("1.6449340668"));
    assert!(rows[0][3].parse::<f64>().unwrap() < 1e-30);
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dshuffle"))
        .args(["mzv", "--comp", "3"])
        .env("DSHUFFLE_PREC", "64")
        .output()
        .unwrap();
    let text = String::from_utf8(o.stdout).unwrap();
    let value = text.lines().nth(1).unwrap().split(',').nth(2).unwrap().to_string();
    assert!(value.starts_with("1.2020569031"));
    assert!(value.len() < 25);
}

#[test]
fn solve_associator_writes_assoc_file() {
    let o = run(&["solve-associator", "--mu", "1", "--deg", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("assoc.v1\n"));
    assert!(text.lines().any(|l| l == "e0e1 1/24"));
}

#[test]
fn stored_associator_round_trip_and_failure_exit() {
    let path = tmp("phi4.assoc");
    let o = run(&["solve-associator", "--mu", "1", "--deg", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["dmr-check", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["verdict"], true);
    let o = run(&["pentagon-check", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    // break the degree-2 coefficient: both checks must fail with exit 1
    let text = std::fs::read_to_string(&path).unwrap().replace("e0e1 1/24", "e0e1 1/12").replace("e1e0 -1/24", "e1e0 -1/12");
    let bad = tmp("bad.assoc");
    std::fs::write(&bad, text).unwrap();
    let o = run(&["dmr-check", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["verdict"], false);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["equal"] == false));
}

#[test]
fn reports_are_deterministic() {
    let args = ["theorem32", "--deg", "3", "--random", "3", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["theorem32", "--deg", "3", "--random", "3", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn torsor_difference_passes_betti_membership() {
    let o = run(&["dmrB-difference", "--deg", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r = json(&o);
    assert_eq!(r["values"]["mu"], "1");
}

#[test]
fn kz_check_exit_codes() {
    let o = run(&["kz-check", "--weight", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"].as_array().unwrap().len(), 5);
    assert_eq!(run(&["kz-check", "--weight", "6"]).status.code(), Some(2));
}

#[test]
fn all_six_coproducts() {
    for (which, elem) in [
        ("v-dr", "e0e1"),
        ("w-dr", "y1 y2"),
        ("m-dr", "e1e0 + e0e1"),
        ("v-b", "X0 X1^-1"),
        ("w-b", "Y2+ - 3 Y1-"),
        ("m-b", "X0 X1"),
    ] {
        let o = run(&["coproduct", "--which", which, "--elem", elem, "--deg", "3"]);
        assert_eq!(o.status.code(), Some(0), "{} {}: {}", which, elem, String::from_utf8_lossy(&o.stderr));
        let r = json(&o);
        assert_eq!(r["config"]["which"], which);
        assert!(!r["values"]["coproduct"].as_str().unwrap().is_empty());
    }
    let o = run(&["coproduct", "--which", "v-dr", "--elem", "e0e1", "--deg", "2"]);
    assert_eq!(json(&o)["values"]["coproduct"], "1(x)e0e1 + e0(x)e1 + e1(x)e0 + e0e1(x)1");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["coproduct", "--which", "v-dr", "--elem", "e0 +* e2"]).status.code(), Some(2));
    assert_eq!(run(&["coproduct", "--which", "v-dr", "--elem", "X0"]).status.code(), Some(2));
    assert_eq!(run(&["coproduct", "--which", "w-b", "--elem", "X0"]).status.code(), Some(2));
    assert_eq!(run(&["solve-associator", "--deg", "9"]).status.code(), Some(2));
    assert_eq!(run(&["mzv", "--comp", "1,2"]).status.code(), Some(2));
}

#[test]
fn fixtures_are_current() {
    let o = run(&["fixtures", "regen", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let path = tmp("fixtures.v1");
    let o = run(&["fixtures", "regen", "--path", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    let stored = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../dshuffle/fixtures/braid_fixtures.v1")).unwrap();
    assert_eq!(written, stored);
}
