//! The claim registry as a whole.

use sympgen::claims::{claim_ids, run_all, RunOptions, Status};

#[test]
fn every_claim_passes() {
    let r = run_all("*", &RunOptions::default()).unwrap();
    let failed: Vec<&str> = r
        .claims
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.id.as_str())
        .collect();
    assert!(failed.is_empty(), "failing claims: {failed:?}");
    assert_eq!(r.summary.total, claim_ids().len());
}

#[test]
fn reports_do_not_depend_on_scheduling() {
    let one = run_all(
        "main*",
        &RunOptions {
            threads: Some(1),
            timings: false,
        },
    )
    .unwrap();
    let many = run_all(
        "main*",
        &RunOptions {
            threads: Some(4),
            timings: false,
        },
    )
    .unwrap();
    assert_eq!(one.to_json(), many.to_json());
    let again = run_all(
        "main*",
        &RunOptions {
            threads: Some(4),
            timings: false,
        },
    )
    .unwrap();
    assert_eq!(many.to_json(), again.to_json());
}

#[test]
fn timings_are_opt_in() {
    let r = run_all("subfield", &RunOptions::default()).unwrap();
    assert!(r.to_json().contains("\"wall_time_ms\": null"));
    let t = run_all(
        "subfield",
        &RunOptions {
            threads: None,
            timings: true,
        },
    )
    .unwrap();
    assert!(t.claims[0].wall_time_ms.is_some());
}
