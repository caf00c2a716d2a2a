use minorlab_core::minor::{is_minor, verify_model};
use minorlab_core::oracle::{minor_corpus, naive_minor};
use minorlab_core::Budget;

#[test]
fn engine_agrees_with_partition_enumeration() {
    let mut disagreements = Vec::new();
    for (i, (h, g)) in minor_corpus(2024, 500).iter().enumerate() {
        let budget = Budget::default();
        let got = is_minor(h, g, &budget).unwrap();
        if let Some(m) = &got {
            verify_model(h, g, m).unwrap();
        }
        if got.is_some() != naive_minor(h, g) {
            disagreements.push(i);
        }
    }
    assert!(disagreements.is_empty(), "disagreements at {disagreements:?}");
}

#[test]
fn engine_agrees_on_larger_patterns() {
    // patterns up to 6 vertices against hosts up to 8
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..120 {
        let hn = rng.gen_range(3..=6);
        let gn = rng.gen_range(hn..=8);
        let h = minorlab_core::oracle::random_graph(&mut rng, hn, 0.6);
        let g = minorlab_core::oracle::random_graph(&mut rng, gn, 0.55);
        let got = is_minor(&h, &g, &Budget::default()).unwrap();
        assert_eq!(got.is_some(), naive_minor(&h, &g), "{:?} in {:?}", h.edges(), g.edges());
    }
}
