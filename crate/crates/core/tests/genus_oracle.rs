use minorlab_core::embed::{genus_profile, GenusOptions};
use minorlab_core::oracle::{connected_graphs, genus_brute};
use minorlab_core::Budget;

#[test]
fn engine_matches_exhaustive_enumeration_up_to_nine_edges() {
    let graphs = connected_graphs(9);
    let budget = Budget::unlimited();
    let mut opts = GenusOptions::new(&budget);
    for use_blocks in [true, false] {
        opts.use_blocks = use_blocks;
        for g in &graphs {
            let p = genus_profile(g, &opts).unwrap();
            let (eg, o, no) = genus_brute(g);
            assert_eq!((p.eg, p.orientable_genus, p.nonorientable_genus), (eg, o, no), "graph {:?}", g.edges());
        }
    }
    eprintln!("{} graphs", graphs.len());
}
