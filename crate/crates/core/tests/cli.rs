use std::path::PathBuf;
use std::process::Command;

use hopf_forge::cli::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.qg")).display().to_string()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["hopf-forge"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let r = run(argv);
    assert!(r.stderr.is_empty(), "{}", r.stderr);
    (r.code, serde_json::from_str(&r.stdout).unwrap())
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopf-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_c_s3_reports_trivial_modular_data() {
    let (code, r) = json(&["analyze", &fixture("c_s3")]);
    assert_eq!(code, 0);
    assert_eq!(check(&r, "mu")["data"], "1");
    assert_eq!(check(&r, "sigma")["message"], "σ = ι");
    assert_eq!(check(&r, "delta")["message"], "δ = 1");
    assert_eq!(r["outcome"], "pass");
}

#[test]
fn analyze_h4_depends_on_the_star_assertion() {
    let (code, r) = json(&["analyze", &fixture("sweedler_h4")]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "phi-gram")["status"], "fail");
    assert_eq!(check(&r, "phi-gram")["data"]["verdict"], "indefinite");
    assert_eq!(check(&r, "mu")["data"], "-1");
    let (code, r) = json(&["analyze", &fixture("sweedler_h4"), "--no-star-assert"]);
    assert_eq!(code, 0);
    assert_eq!(check(&r, "phi-gram")["mandatory"], false);
    assert!(check(&r, "positivity-obstruction")["message"].as_str().unwrap().contains("S² has eigenvalue -1"));
}

#[test]
fn semilattice_fails_at_the_t_maps_only() {
    let (code, r) = json(&["validate", "semilattice2"]);
    assert_eq!(code, 1);
    let checks = r["checks"].as_array().unwrap();
    let failed: Vec<&str> =
        checks.iter().filter(|c| c["status"] == "fail").map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failed, ["t-maps"]);
    assert_eq!(checks.last().unwrap()["name"], "t-maps");
    assert_eq!(check(&r, "t-maps")["data"][0], serde_json::json!({"map": "T_{Δ2}", "rank": 2}));
}

#[test]
fn names_and_paths_resolve_to_the_same_digest() {
    let (_, by_name) = json(&["validate", "c_z4"]);
    let (_, by_path) = json(&["validate", &fixture("c_z4")]);
    assert_eq!(by_name["input_digest"], by_path["input_digest"]);
    assert_eq!(by_name["checks"], by_path["checks"]);
}

#[test]
fn reports_are_deterministic() {
    for args in [["analyze", "sweedler_h4"], ["pair", "pairing-uqsu2-suq2"], ["dual", "group_s3"]] {
        let a = run(["hopf-forge", args[0], args[1], "--format", "json"]);
        let b = run(["hopf-forge", args[0], args[1], "--format", "json"]);
        assert_eq!(a, b);
        let t = run(["hopf-forge", args[0], args[1]]);
        assert_eq!(t, run(["hopf-forge", args[0], args[1]]));
    }
}

#[test]
fn dual_writes_a_definition_that_validates() {
    let out = scratch("dual_c_s3.qg");
    let r = run(["hopf-forge", "dual", "c_s3", "--output", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let (code, v) = json(&["validate", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(check(&v, "algebra")["message"], "associative unital algebra of dimension 6, with involution");
}

#[test]
fn output_flag_writes_the_report() {
    let out = scratch("report.json");
    let r = run(["hopf-forge", "validate", "c_z2", "--format", "json", "--output", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("outcome pass"));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(written["command"], "validate");
}

#[test]
fn subcheck_on_c_z4() {
    let (code, r) = json(&["subcheck", "c_z4"]);
    assert_eq!(code, 0);
    assert!(check(&r, "C(H), H={0,2}: induced")["message"].as_str().unwrap().contains("isomorphic to c_z2"));
}

#[test]
fn subcheck_without_blocks_fails() {
    let (code, r) = json(&["subcheck", "c_s3"]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "subalgebras")["status"], "fail");
}

#[test]
fn presentations_validate() {
    for name in ["uq-su2", "suq2"] {
        let (code, r) = json(&["validate", name, "--degree", "4"]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(r["degree"], 4);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(["hopf-forge", "analyze", "no-such-thing"]).code, 2);
    assert_eq!(run(["hopf-forge", "frobnicate"]).code, 2);
    assert_eq!(run(["hopf-forge", "analyze", "uq-su2"]).code, 2);
    assert_eq!(run(["hopf-forge", "pair", "suq2"]).code, 2);
    assert_eq!(run(["hopf-forge", "analyze", "c_z2", "--spec-points", "3/2"]).code, 2);
    let bad = scratch("bad.qg");
    std::fs::write(&bad, "{\"format_version\": 1, \"name\": ").unwrap();
    let r = run(["hopf-forge", "validate", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("malformed JSON"));
}

#[test]
fn non_associative_file_is_a_verification_failure() {
    let text = std::fs::read_to_string(fixture("group_s3")).unwrap();
    let mut def: Value = serde_json::from_str(&text).unwrap();
    for e in def["mul"].as_array_mut().unwrap() {
        if e[0] == 1 && e[1] == 1 && e[2] == 0 {
            e[2] = 4.into();
        }
    }
    let path = scratch("mutated.qg");
    std::fs::write(&path, serde_json::to_string(&def).unwrap()).unwrap();
    let (code, r) = json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(check(&r, "algebra")["message"].as_str().unwrap().starts_with("associativity fails"));
}

#[test]
fn examples_lists_and_emits() {
    let dir = scratch("emitted");
    let r = run(["hopf-forge", "examples", "--emit", dir.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("pairing-uqsu2-suq2"));
    for name in ["c_z2", "c_z4", "c_s3", "group_s3", "sweedler_h4", "semilattice2", "uq-su2", "suq2"] {
        let emitted = std::fs::read_to_string(dir.join(format!("{name}.qg"))).unwrap();
        assert_eq!(emitted, std::fs::read_to_string(fixture(name)).unwrap(), "{name}");
    }
}

#[test]
fn binary_exit_codes_and_environment_points() {
    let bin = env!("CARGO_BIN_EXE_hopf-forge");
    let out = Command::new(bin)
        .args(["analyze", "c_z2", "--format", "json"])
        .env("HOPF_FORGE_SPEC_POINTS", "1/4, 3/4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["spec_points"], "1/4,3/4");
    let flag = Command::new(bin)
        .args(["analyze", "c_z2", "--format", "json", "--spec-points", "1/5"])
        .env("HOPF_FORGE_SPEC_POINTS", "1/4")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&flag.stdout).unwrap();
    assert_eq!(r["spec_points"], "1/5");
    let fail =
        Command::new(bin).args(["analyze", "sweedler_h4"]).env_remove("HOPF_FORGE_SPEC_POINTS").output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let usage = Command::new(bin).args(["pair"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
