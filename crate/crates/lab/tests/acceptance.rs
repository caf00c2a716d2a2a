//! One line per acceptance criterion, from the "paper" claim suite.

use minorlab::{claims, default_workers, run_claims, Status};

const CRITERIA: [&str; 10] = [
    "surface obstruction registry",
    "Kuratowski-connectivity suite",
    "construction identities and counts",
    "shallow-vortex minors and packings",
    "packing bound on Dyck grids",
    "cover growth on Dyck grids",
    "genus engine vs enumeration and tables",
    "minor engine vs partition enumeration",
    "property suites",
    "canonical embeddings and cycle lengths",
];

fn main() {
    let suite = claims::suite("paper").unwrap();
    let reports = run_claims(&suite, minorlab_core::budget::DEFAULT_NODES, default_workers()).unwrap();
    let mut failed = Vec::new();
    for (i, title) in CRITERIA.iter().enumerate() {
        let n = i as u8 + 1;
        let mine: Vec<_> = suite.iter().zip(&reports).filter(|(c, _)| c.criterion == Some(n)).map(|(_, r)| r).collect();
        let bad: Vec<String> = mine
            .iter()
            .filter(|r| r.status != Status::Pass)
            .map(|r| format!("{} {:?}", r.claim_id, r.status))
            .collect();
        let ms: u64 = mine.iter().map(|r| r.runtime_ms).sum();
        let verdict = if !mine.is_empty() && bad.is_empty() { "PASS" } else { "FAIL" };
        println!("AC{n:<2} {verdict} {title} ({} claims, {ms} ms){}", mine.len(), if bad.is_empty() { String::new() } else { format!(": {}", bad.join(", ")) });
        if verdict == "FAIL" {
            failed.push(n);
        }
    }
    let nesting = reports.iter().find(|r| r.claim_id == "core-nesting").unwrap();
    println!(
        "     core nesting: {} nested pairs, {} violations; {} crossing pairs break the unrestricted containment",
        nesting.computed["nested_pairs"], nesting.computed["nested_violations"].as_array().map_or(0, Vec::len), nesting.computed["crossing_counterexamples"]
    );
    let cycles = reports.iter().find(|r| r.claim_id == "dyck-cycle-lengths").unwrap();
    println!("     Dyck-wall exceptional face discrepancies: {}", cycles.computed["wall_discrepancies"]);
    if !failed.is_empty() {
        eprintln!("criteria failed: {failed:?}");
        std::process::exit(1);
    }
}
