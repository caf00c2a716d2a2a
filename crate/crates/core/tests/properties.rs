use minorlab_core::embed::{embeds, genus_profile, verify_embedding, GenusOptions};
use minorlab_core::family::complete;
use minorlab_core::graph6::{decode_str, encode_string};
use minorlab_core::iso::isomorphic;
use minorlab_core::minor::{
    cover, extract_single, is_minor, pack, pack_value, verify_cover, verify_model, verify_packing, MinorOptions, PackKind, PackOutcome,
};
use minorlab_core::oracle::surface_leq_bfs;
use minorlab_core::surface::ClosedSurfaceSet;
use minorlab_core::{glue, BoundariedGraph, Budget, Graph, Surface};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::build(n, &edges).unwrap()
        })
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::build(g.n(), &edges).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn graph_with_perms(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n), permutation(n))
    })
}

fn no_minor(h: &Graph, g: &Graph) -> minorlab_core::Result<bool> {
    Ok(is_minor(h, g, &Budget::default())?.is_none())
}

fn surface_strategy(max_eg: usize) -> impl Strategy<Value = Surface> {
    proptest::sample::select(Surface::all_up_to(max_eg))
}

#[test]
fn surface_order_is_a_partial_order_matching_move_reachability() {
    let all = Surface::all_up_to(6);
    for a in &all {
        assert!(a.leq(a));
        for b in &all {
            assert_eq!(a.leq(b), surface_leq_bfs(a, b, 6), "{a} ⪯ {b}");
            if a.leq(b) && b.leq(a) {
                assert_eq!(a, b);
            }
            for c in &all {
                if a.leq(b) && b.leq(c) {
                    assert!(a.leq(c));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn graph6_round_trip(g in graph(30)) {
        let back = decode_str(&encode_string(&g)).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn contraction_counts(g in graph(12), pick in any::<prop::sample::Index>()) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let c = g.contract(u, v).unwrap();
        prop_assert_eq!(c.n(), g.n() - 1);
        prop_assert!(c.m() < g.m());
    }

    #[test]
    fn glue_with_empty_boundary_is_disjoint_union(a in graph(8), b in graph(8)) {
        let g = glue(&BoundariedGraph::new(a.clone(), vec![]).unwrap(), &BoundariedGraph::new(b.clone(), vec![]).unwrap()).unwrap();
        prop_assert_eq!(g.n(), a.n() + b.n());
        prop_assert_eq!(g.m(), a.m() + b.m());
    }

    #[test]
    fn isomorphism_is_an_equivalence((g, p, q) in graph_with_perms(9)) {
        let g1 = relabel(&g, &p);
        let g2 = relabel(&g1, &q);
        prop_assert!(isomorphic(&g, &g).unwrap());
        prop_assert_eq!(isomorphic(&g, &g1).unwrap(), isomorphic(&g1, &g).unwrap());
        prop_assert!(isomorphic(&g, &g1).unwrap() && isomorphic(&g1, &g2).unwrap() && isomorphic(&g, &g2).unwrap());
    }

    #[test]
    fn closed_sets_are_downward_closed(a in surface_strategy(6), b in surface_strategy(6), probe in surface_strategy(8), lower in surface_strategy(8)) {
        let obs = if a.leq(&b) || b.leq(&a) { vec![a] } else { vec![a, b] };
        let set = ClosedSurfaceSet::from_obstructions(obs).unwrap();
        if set.contains(&probe) && lower.leq(&probe) {
            prop_assert!(set.contains(&lower));
        }
    }

    #[test]
    fn embeddings_move_up_and_witnesses_fit(g in graph(7)) {
        let budget = Budget::default();
        let opts = GenusOptions::new(&budget);
        let all = Surface::all_up_to(3);
        for s in &all {
            let Some(w) = embeds(&g, s, &opts).unwrap() else { continue };
            prop_assert!(verify_embedding(&g, &w).unwrap().leq(s));
            for t in &all {
                if s.leq(t) {
                    prop_assert!(embeds(&g, t, &opts).unwrap().is_some(), "{} embeds in {} but not in {}", encode_string(&g), s, t);
                }
            }
        }
    }

    #[test]
    fn minors_never_raise_genus(g in graph(8), pick in any::<prop::sample::Index>()) {
        let budget = Budget::default();
        let opts = GenusOptions::new(&budget);
        let p = genus_profile(&g, &opts).unwrap();
        let mut minors = Vec::new();
        if g.n() > 1 {
            minors.push(g.delete_vertex(pick.index(g.n())).unwrap());
        }
        let edges = g.edges();
        if !edges.is_empty() {
            let (u, v) = edges[pick.index(edges.len())];
            minors.push(g.contract(u, v).unwrap());
        }
        for m in minors {
            let q = genus_profile(&m, &opts).unwrap();
            prop_assert!(q.eg <= p.eg);
            prop_assert!(q.orientable_genus <= p.orientable_genus);
            prop_assert!(q.nonorientable_genus <= p.nonorientable_genus);
        }
    }

    #[test]
    fn minor_relation_is_transitive(a in graph(4), b in graph(6), c in graph(8)) {
        let budget = Budget::default();
        let ab = is_minor(&a, &b, &budget).unwrap();
        let bc = is_minor(&b, &c, &budget).unwrap();
        if let (Some(x), Some(y)) = (&ab, &bc) {
            verify_model(&a, &b, x).unwrap();
            verify_model(&b, &c, y).unwrap();
            let ac = is_minor(&a, &c, &budget).unwrap();
            prop_assert!(ac.is_some());
            verify_model(&a, &c, ac.as_ref().unwrap()).unwrap();
        }
    }

    #[test]
    fn duality_chain_and_certificates(g in graph(8), which in 3usize..=4) {
        let budget = Budget::default();
        let opts = MinorOptions::new(&budget);
        let z = [complete(which)];
        let p = pack_value(&z, &g, 1, PackKind::Single, &opts).unwrap();
        let half = pack_value(&z, &g, 2, PackKind::Single, &opts).unwrap();
        let c = cover(&z, &g, g.n(), &opts).unwrap();
        verify_packing(&z, &g, &p.certificate).unwrap();
        verify_packing(&z, &g, &half.certificate).unwrap();
        verify_cover(&z, &g, &c, no_minor).unwrap();
        prop_assert!(p.value <= half.value);
        prop_assert!(half.value <= 2 * c.s.len());
        prop_assert!(p.value <= c.s.len());
    }

    #[test]
    fn mixed_packings_contain_single_ones(a in graph(5), b in graph(5), k in 1usize..=2) {
        let budget = Budget::default();
        let opts = MinorOptions::new(&budget);
        let z = [complete(3), minorlab_core::family::complete_bipartite(1, 3)];
        let g = a.disjoint_union(&b).disjoint_union(&complete(3)).disjoint_union(&complete(4));
        if let PackOutcome::Found(cert) = pack(&z, &g, k * z.len(), 1, PackKind::Mixed, &opts).unwrap() {
            verify_packing(&z, &g, &cert).unwrap();
            let single = extract_single(&cert, z.len(), k).unwrap();
            prop_assert_eq!(single.hosts.len(), k);
            verify_packing(&z, &g, &single).unwrap();
        }
    }
}
