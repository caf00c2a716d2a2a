use minorlab::claims::{self, ClaimSpec, Operation};
use minorlab::input::GraphRef;
use minorlab::{exit_code, run_claim, run_claims, LabError, Status};

#[test]
fn every_suite_parses_and_ids_are_unique() {
    for name in claims::SUITES {
        let list = claims::suite(name).unwrap();
        assert!(!list.is_empty());
        let mut ids: Vec<&str> = list.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n, "duplicate ids in {name}");
    }
    let paper = claims::suite("paper").unwrap();
    for k in 1..=10 {
        assert!(paper.iter().any(|c| c.criterion == Some(k)), "criterion {k} has no claim");
    }
}

#[test]
fn unknown_suite_is_a_config_error() {
    assert!(matches!(claims::suite("nightly"), Err(LabError::Config(_))));
}

#[test]
fn named_claims_behave() {
    let paper = claims::suite("paper").unwrap();
    for id in ["sobs-k7", "kc-J"] {
        let c = paper.iter().find(|c| c.id == id).unwrap();
        assert_eq!(run_claim(c, 1_000_000).unwrap().status, Status::Pass, "{id}");
    }
}

fn minor_claim(budget: Option<u64>) -> ClaimSpec {
    ClaimSpec {
        id: "tight".into(),
        criterion: None,
        title: String::new(),
        budget,
        op: Operation::Minor {
            pattern: GraphRef::Named("k6".into()),
            host: GraphRef::Named("petersen".into()),
        },
        expect: claims::Expectation { exact: Some(serde_json::json!(true)), ..Default::default() },
    }
}

#[test]
fn impossible_budget_is_refused_not_failed() {
    let r = run_claim(&minor_claim(Some(1)), 1_000_000).unwrap();
    assert_eq!(r.status, Status::Refused);
    assert_eq!(exit_code(&[r]), 2);
}

#[test]
fn claims_without_expectation_are_config_errors() {
    let mut c = minor_claim(None);
    c.expect = Default::default();
    assert!(matches!(run_claim(&c, 1_000_000), Err(LabError::Config(_))));
}

#[test]
fn malformed_inputs_are_config_errors() {
    let text = "[[claim]]\nid = \"x\"\nop = \"kc\"\ngraph = \"no such graph\"\nexpect = { exact = true }\n";
    let list = claims::from_toml(text).unwrap();
    assert!(matches!(run_claim(&list[0], 1000), Err(LabError::Config(_))));
    assert!(claims::from_toml("[[claim]]\nid = \"x\"\nop = \"teleport\"\n").is_err());
}

#[test]
fn smoke_suite_is_reproducible() {
    let list = claims::suite("smoke").unwrap();
    let a = run_claims(&list, 5_000_000, 4).unwrap();
    let b = run_claims(&list, 5_000_000, 1).unwrap();
    assert_eq!(exit_code(&a), 0);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!((&x.claim_id, x.status, &x.computed, x.search_stats), (&y.claim_id, y.status, &y.computed, y.search_stats));
    }
}
