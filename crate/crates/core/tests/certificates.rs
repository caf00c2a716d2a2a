use minorlab_core::oracle::mutation::mutation_suite;
use minorlab_core::oracle::{apex_equivalence, genus_additivity};
use minorlab_core::Budget;

#[test]
fn verifiers_reject_corrupted_certificates() {
    for r in mutation_suite(7, 100).unwrap() {
        println!("{}: {} invalid, {} rejected, {} valid, {} accepted", r.verifier, r.invalid, r.rejected, r.valid, r.accepted);
        assert!(r.passed(100), "{r:?}");
        assert!(r.valid > 0 || r.verifier == "verify_cover", "{}: no valid mutants", r.verifier);
    }
}

#[test]
fn apex_test_matches_face_enumeration() {
    let r = apex_equivalence(8, 8).unwrap();
    assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
    assert!(r.graphs > 300, "{} graphs", r.graphs);
}

#[test]
fn euler_genus_adds_over_components() {
    let r = genus_additivity(11, 100, &Budget::default()).unwrap();
    assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
    assert!(r.max_eg >= 2);
}

#[test]
fn mutation_report_lists_every_verifier() {
    let names: Vec<String> = mutation_suite(3, 20).unwrap().into_iter().map(|r| r.verifier).collect();
    assert_eq!(names, ["verify_model", "verify_packing", "verify_cover", "verify_expansion", "verify_embedding"]);
}
