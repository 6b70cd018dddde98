use std::process::Command;

use parity_cli::{run, Outcome, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::{Map, Value};

fn call(args: &str) -> Outcome {
    run(std::iter::once("parity").chain(args.split_whitespace()))
}

/// One invocation per subcommand plus the usage failures.
const MATRIX: &[(&str, i32)] = &[
    ("verify listings --max-n 2", EXIT_PASS),
    ("verify lie --max-n 3", EXIT_PASS),
    ("group order --kind CP --n 3", EXIT_PASS),
    ("group list --kind AP --n 2", EXIT_PASS),
    ("group kernel --parity 2 --n 3 --list", EXIT_PASS),
    ("group parity --element π:[3,1,2];ε:[-1,+1,+1]", EXIT_PASS),
    ("group compose --left π:[2,1];ε:[+1,-1] --right π:[2,1];ε:[-1,-1]", EXIT_PASS),
    ("group matrix --element π:[2,3,1];ε:[+1,-1,-1]", EXIT_PASS),
    ("group generate --kind AP3 --n 4", EXIT_PASS),
    ("group iso --kind CP --other BP --n 2", EXIT_PASS),
    ("group jp --partition 2,2", EXIT_PASS),
    ("group z2span --n 6", EXIT_PASS),
    ("quotient order --partition 2,1,3", EXIT_PASS),
    ("quotient table --partition 1,1", EXIT_PASS),
    ("quotient project --partition 2,1 --x 3,-4,7", EXIT_PASS),
    ("quotient member --lattice A --x 1,-3", EXIT_PASS),
    ("chart compute --partition 3 --x 1/2,-1/3,9/4 --spherical", EXIT_PASS),
    ("chart equiv --partition 2,1 --x 1/2,1/2,0 --y 3/2,-1/2,2", EXIT_PASS),
    ("lattice complex --partition 2,1", EXIT_PASS),
    ("lattice prop1 --partition 2,2", EXIT_PASS),
    ("lattice rotations --partition 1,1 --list", EXIT_PASS),
    ("lattice full --n 2", EXIT_PASS),
    ("lie generators --partition 2,1", EXIT_PASS),
    ("lie closure --partition 1,2 --full", EXIT_PASS),
    ("lie report --partition 2,1", EXIT_PASS),
    ("lie factor --matrix [[\"0\",\"1/2\"],[\"-3\",\"0\"]]", EXIT_PASS),
    ("lie algebra --kind B --a 5/4,3/4 --b 2,1", EXIT_PASS),
    ("lie exp --kind C --t 0.7", EXIT_PASS),
    ("unitary random --n 3 --seed 9", EXIT_PASS),
    ("unitary decompose --n 5 --seed 2", EXIT_PASS),
    ("unitary decompose --n 4 --seed 1 --tol 1e-30", EXIT_FAIL),
    ("lattice prop1 --partition 0,2", EXIT_USAGE),
    ("group order --kind CP --n 0", EXIT_USAGE),
    ("group order --kind XP --n 3", EXIT_USAGE),
    ("group kernel --parity 4 --n 3", EXIT_USAGE),
    ("group parity --element π:[1,1];ε:[+1,+1]", EXIT_USAGE),
    ("group compose --left π:[1];ε:[+1] --right π:[2,1];ε:[+1,+1]", EXIT_USAGE),
    ("group order --kind P --n 12", EXIT_USAGE),
    ("quotient member --lattice J --x 1,1", EXIT_USAGE),
    ("chart compute --partition 2 --x 1/0,1", EXIT_USAGE),
    ("chart equiv --partition 2 --x 1,2 --y 1,2,3", EXIT_USAGE),
    ("lie factor --matrix [[\"1\",\"1\"],[\"0\",\"1\"]]", EXIT_USAGE),
    ("lie factor --matrix not-json", EXIT_USAGE),
    ("lie algebra --kind C --a 1,2,3", EXIT_USAGE),
    ("lie exp --kind A --t 1", EXIT_USAGE),
    ("unitary decompose --matrix [[[1,0],[1,0]],[[0,0],[1,0]]]", EXIT_USAGE),
    ("unitary decompose", EXIT_USAGE),
    ("unitary random --n 3 --tol -1", EXIT_USAGE),
    ("verify all --max-n 0", EXIT_USAGE),
    ("frobnicate", EXIT_USAGE),
    ("", EXIT_USAGE),
];

#[test]
fn exit_codes_for_every_subcommand() {
    for &(args, code) in MATRIX {
        let out = call(args);
        assert_eq!(out.code, code, "`{args}`\nstdout:\n{}\nstderr:\n{}", out.stdout, out.stderr);
        if code == EXIT_USAGE {
            assert!(out.stdout.is_empty(), "`{args}` wrote a report");
            assert!(!out.stderr.is_empty(), "`{args}` gave no diagnostic");
        } else {
            assert!(out.stderr.is_empty(), "`{args}`: {}", out.stderr);
            let word = if code == EXIT_PASS { "result: PASS" } else { "result: FAIL" };
            assert!(out.stdout.contains(word), "`{args}`:\n{}", out.stdout);
        }
    }
}

#[test]
fn json_reports_parse_back_with_a_stable_schema() {
    for &(args, code) in MATRIX.iter().filter(|(_, c)| *c != EXIT_USAGE) {
        let out = call(&format!("{args} --format json"));
        assert_eq!(out.code, code, "`{args}`");
        let v: Map<String, Value> = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("`{args}`: {e}"));
        let keys: Vec<&str> = v.keys().map(String::as_str).collect();
        assert_eq!(keys[..2], ["command", "params"], "`{args}`");
        assert_eq!(keys[keys.len() - 3..], ["checks", "pass", "elapsed_ms"], "`{args}`");
        let checks = v["checks"].as_array().unwrap();
        let all = checks.iter().all(|c| c["pass"] == Value::Bool(true));
        assert_eq!(v["pass"], Value::Bool(all), "`{args}`");
        assert_eq!(all, code == EXIT_PASS, "`{args}`");
        for c in checks {
            let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
            assert_eq!(keys, ["name", "expected", "actual", "pass"]);
        }
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, Value::Object(v));
    }
}

#[test]
fn documented_examples() {
    let out = call("group order --kind CP --n 3 --format json");
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["order"], 24);

    let out = call("lattice prop1 --partition 2,1 --format json");
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((v["jp_order"].clone(), v["rotation_order"].clone()), (8.into(), 8.into()));
    assert_eq!(v["pass"], true);
    assert_eq!(out.code, EXIT_PASS);

    let out = call("lattice prop1 --partition 0,2");
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn params_echo_the_arguments() {
    let out = call("chart compute --partition 2,1 --x -1/2,3,1/3 --format json");
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["params"]["partition"], "2,1");
    assert_eq!(v["params"]["x"], "-1/2,3,1/3");
    assert_eq!(v["chart"][0]["theta"][0], "0");
    assert_eq!(v["chart"][0]["phi"], "1/2");
}

#[test]
fn chart_output_parses_as_a_chart() {
    let out = call("chart compute --partition 2,2 --x 1/3,5/3,-7/2,1/4 --format json");
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let c: parity_groups::abelian::Chart = serde_json::from_value(v["chart"].clone()).unwrap();
    assert_eq!(c.blocks.len(), 2);
}

#[test]
fn decomposition_output_feeds_back() {
    let out = call("unitary random --n 3 --seed 4 --format json");
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let m = serde_json::to_string(&v["matrix"]).unwrap();
    let out = run(["parity", "unitary", "decompose", "--matrix", &m, "--format", "json"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    let d: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(d["decomposition"]["thetas"].as_array().unwrap().len(), 3);
}

#[test]
fn help_and_version_exit_zero() {
    for args in ["--help", "group --help", "--version"] {
        let out = call(args);
        assert_eq!(out.code, EXIT_PASS, "`{args}`");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn binary_uses_the_exit_contract() {
    let bin = env!("CARGO_BIN_EXE_parity");
    let ok = Command::new(bin).args(["group", "order", "--kind", "BP", "--n", "4"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS"));
    assert!(ok.stderr.is_empty());

    let bad = Command::new(bin).args(["quotient", "order", "--partition", "0,2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());

    let fail = Command::new(bin)
        .args(["unitary", "decompose", "--n", "3", "--tol", "1e-30", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(EXIT_FAIL));
    let v: Value = serde_json::from_slice(&fail.stdout).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn verify_all_passes_at_small_degree() {
    let out = call("verify all --max-n 3 --format json");
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 11);
    for k in 1..=11 {
        let prefix = format!("[{k}] ");
        assert!(
            v["checks"].as_array().unwrap().iter().any(|c| c["name"].as_str().unwrap().starts_with(&prefix)),
            "criterion {k} has no checks"
        );
    }
}
