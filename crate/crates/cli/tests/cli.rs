use std::process::{Command, Output};

use howelab_cli::{
    cmd_flow, cmd_verify_correspondence, cmd_verify_duality, cmd_verify_moment, Cli, Command as Sub,
};
use clap::Parser;
use serde_json::Value;

fn howelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howelab"))
        .args(args)
        .env_remove("HOWELAB_REPORT_DIR")
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn parse(args: &[&str]) -> Sub {
    let mut full = vec!["howelab"];
    full.extend_from_slice(args);
    Cli::try_parse_from(full).unwrap().command
}

#[test]
fn moment_suite_passes_and_names_tolerances() {
    let out = howelab(&["verify-moment", "--n", "3", "--m", "2", "--samples", "100", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["seed"], 42);
    assert_eq!(r["parameters"]["fd_step"], 1e-5);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    for c in checks {
        assert!(c["tolerance"].is_number() || c["tolerance"] == "exact");
    }
    let bracket = checks.iter().find(|c| c["id"] == "moment.bracket_vanishing").unwrap();
    assert_eq!(bracket["tolerance"], 1e-6);
}

#[test]
fn n_smaller_than_m_is_a_usage_error() {
    let out = howelab(&["verify-moment", "--n", "2", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = howelab(&["verify-moment", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = howelab(&["verify-correspondence", "--sigma-grid", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_samples_pass_vacuously_with_warning() {
    let out = howelab(&["verify-moment", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(!r["warnings"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify-correspondence", "--n", "4", "--m", "3", "--samples", "30", "--seed", "5"];
    let a = howelab(&args);
    let b = howelab(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = howelab(&["verify-correspondence", "--n", "4", "--m", "3", "--samples", "30", "--seed", "6"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn parallel_mode_matches_serial_checks() {
    let serial = match parse(&["verify-moment", "--samples", "40", "--seed", "3"]) {
        Sub::VerifyMoment(a) => cmd_verify_moment(&a).unwrap(),
        _ => unreachable!(),
    };
    let parallel = match parse(&["verify-moment", "--samples", "40", "--seed", "3", "--parallel"]) {
        Sub::VerifyMoment(a) => cmd_verify_moment(&a).unwrap(),
        _ => unreachable!(),
    };
    assert_eq!(serial.checks, parallel.checks);
}

#[test]
fn correspondence_models() {
    for args in [
        vec!["verify-correspondence", "--n", "3", "--m", "2", "--sigma-grid", "auto"],
        vec!["verify-correspondence", "--n", "4", "--m", "2", "--sigma-grid", "2,1;1.5,1.5;0,0"],
        vec!["verify-correspondence", "--model", "cotangent", "--rank", "3"],
        vec!["verify-correspondence", "--model", "projective", "--k", "2", "--n", "2"],
    ] {
        let r = match parse(&args) {
            Sub::VerifyCorrespondence(a) => cmd_verify_correspondence(&a).unwrap(),
            _ => unreachable!(),
        };
        assert!(r.passed(), "{args:?}: {:?}", r.failures().collect::<Vec<_>>());
    }
    let out = howelab(&["verify-correspondence", "--model", "projective", "--k", "2", "--n", "2"]);
    let r = json(&out);
    let low = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "correspondence.projective.endpoint_low")
        .unwrap();
    assert_eq!(low["status"], "pass");
}

#[test]
fn duality_suites_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("tables.csv");
    let out = howelab(&[
        "verify-duality",
        "--model",
        "matrix",
        "--n",
        "2",
        "--m",
        "2",
        "--k-max",
        "8",
        "--emit-table",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    // partitions of k with at most two parts, k = 0..=8
    assert_eq!(rows.len(), 1 + 1 + 2 + 2 + 3 + 3 + 4 + 4 + 5);
    let deg2: Vec<_> = rows.iter().filter(|r| &r[1] == "2").collect();
    assert_eq!(&deg2[0][2], "2 0");
    assert_eq!(&deg2[0][3], "0 -2");
    assert_eq!(&deg2[0][5], "3");

    for args in [
        vec!["verify-duality", "--model", "projective", "--n", "2", "--k-max", "10"],
        vec!["verify-duality", "--model", "matrix", "--n", "1", "--m", "1", "--k-max", "3"],
    ] {
        let outcome = match parse(&args) {
            Sub::VerifyDuality(a) => cmd_verify_duality(&a).unwrap(),
            _ => unreachable!(),
        };
        assert!(outcome.report.passed());
        if args.contains(&"1") {
            assert!(outcome
                .tables
                .iter()
                .all(|t| t.rows.iter().all(|r| r.source_dim == 1u32.into() && r.target_dim == 1u32.into())));
        }
    }
}

#[test]
fn flow_variants() {
    for args in [
        vec!["flow", "--n", "2", "--m", "2", "--steps", "1000", "--seed", "7"],
        vec!["flow", "--zero-start"],
    ] {
        let r = match parse(&args) {
            Sub::Flow(a) => cmd_flow(&a).unwrap(),
            _ => unreachable!(),
        };
        assert!(r.passed(), "{args:?}");
    }
    let out = howelab(&["flow", "--step-size", "10", "--steps", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["parameters"]["halvings"].as_i64().unwrap() > 0);
}

#[test]
fn report_dir_receives_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_howelab"))
        .args(["verify-duality", "--model", "projective", "--n", "3", "--k-max", "4"])
        .env("HOWELAB_REPORT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let path = dir.path().join("verify-duality-seed0.json");
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["suite"], "verify-duality");
    assert_eq!(r["checks"].as_array().unwrap().len(), 5 * 4);
}
