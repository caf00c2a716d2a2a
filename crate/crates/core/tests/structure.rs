use minorlab_core::embed::planar;
use minorlab_core::family::{complete, cycle, generate, growth_model, FamilySpec};
use minorlab_core::kuratowski::{is_kuratowski_connected, minimal_separations, npl, DiskSide};
use minorlab_core::minor::{minor_search, verify_model, MinorAnswer, MinorOptions};
use minorlab_core::oracle::{core_nesting, kuratowski_corpus, ring_blowup_corpus};
use minorlab_core::Budget;

#[test]
fn ring_blowups_are_kuratowski_connected() {
    let corpus = ring_blowup_corpus(12);
    assert!(corpus.len() >= 8, "{} ring blowups", corpus.len());
    for (name, g) in corpus {
        assert!(is_kuratowski_connected(&g).unwrap().kuratowski_connected, "{name}");
        assert!(!planar(&g), "{name}");
    }
}

#[test]
fn exactly_one_side_is_disk_embeddable() {
    for (name, g) in kuratowski_corpus() {
        if !g.is_connected() || planar(&g) || !is_kuratowski_connected(&g).unwrap().kuratowski_connected {
            continue;
        }
        for r in minimal_separations(&g, 3, None).unwrap() {
            assert!(matches!(r.disk_side, DiskSide::A | DiskSide::B), "{name}: {:?} has {:?}", r.separation, r.disk_side);
        }
    }
}

#[test]
fn non_planar_part_stays_kuratowski_connected() {
    let mut corpus = kuratowski_corpus();
    corpus.push(("K5 ∪ C4".into(), complete(5).disjoint_union(&cycle(4))));
    corpus.push(("K3,3 ∪ K4".into(), minorlab_core::family::complete_bipartite(3, 3).disjoint_union(&complete(4))));
    corpus.push(("J".into(), minorlab_core::family::graph_j()));
    for (name, g) in corpus {
        if is_kuratowski_connected(&g).unwrap().kuratowski_connected {
            assert!(is_kuratowski_connected(&npl(&g)).unwrap().kuratowski_connected, "{name}");
        }
    }
}

#[test]
fn cores_nest_for_nested_separations() {
    let (mut pairs, mut nested) = (0, 0);
    for (name, g) in kuratowski_corpus() {
        if !g.is_connected() || planar(&g) || !is_kuratowski_connected(&g).unwrap().kuratowski_connected {
            continue;
        }
        let r = core_nesting(&g).unwrap();
        assert!(r.nested_violations.is_empty(), "{name}: {:?}", r.nested_violations);
        pairs += r.pairs;
        nested += r.nested_pairs;
    }
    assert!(pairs > 0 && nested > 0);
}

#[test]
fn containment_needs_nested_separations() {
    // K5 plus a pendant edge at 0: X = K5, Y = {0,1,2,5}; Z = {0,1,3,5}, W = K5.
    // X ⊆ W, yet vertex 3 of the core {3,4} lies in the separator {0,1,3}.
    let g = complete(5).add_vertex(&[0]).unwrap();
    let r = core_nesting(&g).unwrap();
    assert!(r.nested_violations.is_empty());
    assert!(r.crossing_violations.iter().any(|v| v.starts_with("core [3, 4]")), "{r:?}");
}

#[test]
fn families_grow_by_minors() {
    let families: Vec<Box<dyn Fn(usize) -> FamilySpec>> = vec![
        Box::new(|k| FamilySpec::AnnulusGrid { k }),
        Box::new(|k| FamilySpec::HandleGrid { k }),
        Box::new(|k| FamilySpec::CrosscapGrid { k }),
        Box::new(|k| FamilySpec::DyckGrid { k, h: 0, c: 1 }),
        Box::new(|k| FamilySpec::DyckGrid { k, h: 1, c: 0 }),
        Box::new(|k| FamilySpec::DyckGrid { k, h: 0, c: 2 }),
        Box::new(|k| FamilySpec::DyckGrid { k, h: 1, c: 1 }),
        Box::new(|k| FamilySpec::DyckWall { t: k, h: 0, c: 1 }),
        Box::new(|k| FamilySpec::DyckWall { t: k, h: 1, c: 0 }),
        Box::new(|k| FamilySpec::ShallowVortexGrid { k }),
        Box::new(|k| FamilySpec::Wall { k: k + 2 }),
    ];
    for f in &families {
        for k in 1..3 {
            for k2 in k + 1..=3 {
                let a = generate(&f(k)).unwrap().graph;
                let b = generate(&f(k2)).unwrap().graph;
                let budget = Budget::new(20_000_000);
                let mut opts = MinorOptions::new(&budget);
                opts.hints.extend(growth_model(&f(k), &f(k2)));
                let found = minor_search(&a, &b, &opts).unwrap_or_else(|e| panic!("{:?} ≤ {:?}: {e}", f(k), f(k2)));
                let MinorAnswer::Found(m) = found else { panic!("{:?} ≤ {:?}", f(k), f(k2)) };
                verify_model(&a, &b, &m).unwrap();
            }
        }
    }
}

#[test]
fn dyck_grid_cycle_lengths() {
    for k in 1..=3 {
        for (h, c) in [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)] {
            let g = generate(&FamilySpec::DyckGrid { k, h, c }).unwrap();
            assert_eq!(g.tags.vertices["simple_cycle"].len(), 4 * k * (1 + h + c));
            let face = &g.tags.vertices["exceptional_face"];
            assert_eq!(face.len(), 4 * (2 * h + c) + 4 * k, "k={k} h={h} c={c}");
        }
    }
}

#[test]
fn dyck_wall_cycle_lengths() {
    for t in 1..=3 {
        for (h, c) in [(0, 1), (1, 0), (0, 2), (1, 1)] {
            let g = generate(&FamilySpec::DyckWall { t, h, c }).unwrap();
            let face = &g.tags.vertices["exceptional_face"];
            assert_eq!(face.len(), 6 * (2 * h + c) + 8 * t, "t={t} h={h} c={c}");
        }
    }
}

#[test]
fn dyck_growth_models_verify() {
    for (h, c) in [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)] {
        for k in 1..=4 {
            for k2 in k..=5 {
                for (a, b) in [
                    (FamilySpec::DyckGrid { k, h, c }, FamilySpec::DyckGrid { k: k2, h, c }),
                    (FamilySpec::DyckWall { t: k, h, c }, FamilySpec::DyckWall { t: k2, h, c }),
                ] {
                    let m = growth_model(&a, &b).unwrap();
                    verify_model(&generate(&a).unwrap().graph, &generate(&b).unwrap().graph, &m).unwrap_or_else(|e| panic!("{a:?} ≤ {b:?}: {e}"));
                }
            }
        }
    }
    assert!(growth_model(&FamilySpec::DyckWall { t: 2, h: 0, c: 1 }, &FamilySpec::DyckWall { t: 3, h: 1, c: 0 }).is_none());
}
