use std::process::{Command, Output};

use num_bigint::BigInt;
use qdissect::identities::jobs;
use qdissect::series::{from_json, to_json};
use qdissect::Series;

fn qdissect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdissect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_named_series() {
    let o = qdissect(&["expand", "G", "--prec", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let x: Series = from_json(
        stdout(&qdissect(&[
            "expand", "G", "--prec", "6", "--format", "json",
        ]))
        .trim(),
    )
    .unwrap();
    assert_eq!(
        x.constant_coeffs().unwrap(),
        [1, 1, 1, 1, 2, 2, 3].map(BigInt::from)
    );

    let o = qdissect(&["expand", "theta", "--s", "2", "--prec", "9"]);
    assert_eq!(
        stdout(&o).trim(),
        "1 + (a^-1 + a)*t^1 + (a^-2 + a^2)*t^4 + (a^-3 + a^3)*t^9 + O(t^10) [t^4 = q]"
    );
}

#[test]
fn json_output_round_trips_exactly() {
    let text = stdout(&qdissect(&[
        "expand",
        "bressoud-rhs",
        "--s",
        "3",
        "--prec",
        "30",
        "--format",
        "json",
    ]));
    let x: Series = from_json(text.trim()).unwrap();
    assert_eq!(to_json(&x), text.trim());
}

#[test]
fn expand_with_values_and_specs() {
    // theta at s = 1 with a = 1: sum q^(n^2/2) over all n
    let x: Series = from_json(
        stdout(&qdissect(&[
            "expand", "theta", "--s", "1", "--a", "1", "--prec", "8", "--format", "json",
        ]))
        .trim(),
    )
    .unwrap();
    assert_eq!(
        x.constant_coeffs().unwrap(),
        [1, 2, 0, 0, 2, 0, 0, 0, 0].map(BigInt::from)
    );
    let o = qdissect(&["expand", "theta", "--s", "1", "--a", "1/2", "--prec", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5/2"), "{}", stdout(&o));
    let spec = r#"{"denom":1,"t_exp":{"c1":1},"pochs":[{"base":{"coeff":1,"t":1},"step":1,"len":{"c1":1}}]}"#;
    let x: Series = from_json(
        stdout(&qdissect(&[
            "expand", "--spec", spec, "--prec", "7", "--format", "json",
        ]))
        .trim(),
    )
    .unwrap();
    // sum q^n/(q)_n = 1/(q)_inf
    assert_eq!(
        x.constant_coeffs().unwrap(),
        [1, 1, 2, 3, 5, 7, 11, 15].map(BigInt::from)
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["expand", "unknown-id"],
        vec!["expand", "theta"],
        vec!["expand", "--spec", "{not json"],
        vec!["verify", "--id", "theorem-1.1", "--s", "9"],
        vec!["verify", "--id", "nope"],
        vec!["asympt", "product", "--a", "-1"],
        vec!["asympt", "product", "--schedule", "0.95,0.9"],
        vec!["asympt", "chain", "--schedule", "0.9,1.2"],
        vec!["frobnicate"],
    ] {
        assert_eq!(qdissect(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_dissection_range() {
    let o = qdissect(&[
        "verify",
        "--id",
        "theorem-1.1",
        "--s",
        "1..5",
        "--prec",
        "50",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("PASS")).count(), 5);
}

#[test]
fn perturbation_hook_fails_the_run() {
    let o = qdissect(&[
        "verify",
        "--id",
        "s3",
        "--perturb",
        "13",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let rec: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(rec["status"], "fail");
    assert_eq!(rec["denom"], 6);
    assert_eq!(rec["first_diff"]["exponent"], 13);
}

#[test]
fn full_registry_is_ordered_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("run{threads}.jsonl"));
        let o = qdissect(&[
            "verify",
            "--all",
            "--jobs",
            threads,
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        // stacks-substituted fails; see the registry notes
        assert_eq!(o.status.code(), Some(1));
        let text = std::fs::read_to_string(&path).unwrap();
        let recs: Vec<serde_json::Value> = text
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        let ids: Vec<(String, String)> = recs
            .iter()
            .map(|r| {
                (
                    r["id"].as_str().unwrap().to_string(),
                    r["status"].as_str().unwrap().to_string(),
                )
            })
            .collect();
        runs.push(ids);
    }
    assert_eq!(runs[0], runs[1]);
    let expected: Vec<&str> = jobs(u32::MAX, None).iter().map(|j| j.id).collect();
    assert_eq!(
        runs[0]
            .iter()
            .map(|(id, _)| id.as_str())
            .collect::<Vec<_>>(),
        expected
    );
    let failing: Vec<&str> = runs[0]
        .iter()
        .filter(|(_, s)| s != "pass")
        .map(|(id, _)| id.as_str())
        .collect();
    assert_eq!(failing, ["stacks-substituted"]);
}

#[test]
fn asymptotic_commands() {
    assert_eq!(
        qdissect(&["asympt", "product", "--a", "1", "--s", "2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(qdissect(&["asympt", "ri-chain"]).status.code(), Some(0));
    assert_eq!(
        qdissect(&["asympt", "chain", "--a", "2"]).status.code(),
        Some(0)
    );
    // one point far from 1 cannot meet a tight tolerance
    assert_eq!(
        qdissect(&["asympt", "product", "--schedule", "0.5", "--tol", "0.001"])
            .status
            .code(),
        Some(1)
    );
    let o = qdissect(&["asympt", "product", "--format", "json"]);
    let rec: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(rec["verdict"], "pass");
    assert_eq!(rec["ratios"].as_array().unwrap().len(), 3);
}

#[test]
fn partition_commands() {
    let o = qdissect(&[
        "partitions",
        "--s",
        "1..3",
        "--max-weight",
        "12",
        "--odd-max-weight",
        "20",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 7);
}
