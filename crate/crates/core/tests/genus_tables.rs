use minorlab_core::embed::{euler_genus, trace};
use minorlab_core::family::{complete, complete_bipartite, mobius_ladder, petersen};
use minorlab_core::{Budget, Graph};

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

// Closed forms: γ(K_n) = ⌈(n−3)(n−4)/12⌉, ~γ(K_n) = ⌈(n−3)(n−4)/6⌉ except ~γ(K7) = 3;
// γ(K_{m,n}) = ⌈(m−2)(n−2)/4⌉, ~γ(K_{m,n}) = ⌈(m−2)(n−2)/2⌉.
fn kn_table(n: usize) -> (usize, usize) {
    let p = (n.saturating_sub(3)) * (n.saturating_sub(4));
    let ng = if n == 7 { 3 } else { ceil_div(p, 6) };
    (ceil_div(p, 12), ng)
}

fn kmn_table(m: usize, n: usize) -> (usize, usize) {
    let p = m.saturating_sub(2) * n.saturating_sub(2);
    (ceil_div(p, 4), ceil_div(p, 2))
}

fn check(g: &Graph, gamma: usize, ngamma: usize) {
    let b = Budget::unlimited();
    let p = euler_genus(g, &b).unwrap();
    assert_eq!(p.orientable_genus, gamma);
    // trees and forests embed in the projective plane at best
    let ngamma = ngamma.max(1);
    assert_eq!(p.nonorientable_genus, ngamma);
    assert_eq!(p.eg, (2 * gamma).min(ngamma));
    assert_eq!(trace(g, &p.witness).unwrap().euler_genus, p.eg);
}

#[test]
fn complete_graphs_match_closed_forms() {
    for n in 1..=7 {
        let (g, ng) = kn_table(n);
        let t = std::time::Instant::now();
        check(&complete(n), g, ng);
        eprintln!("K{n}: {:?}", t.elapsed());
    }
}

#[test]
fn complete_bipartite_graphs_match_closed_forms() {
    for m in 1..=4 {
        for n in m..=4 {
            let (g, ng) = kmn_table(m, n);
            let t = std::time::Instant::now();
            check(&complete_bipartite(m, n), g, ng);
            eprintln!("K{m},{n}: {:?}", t.elapsed());
        }
    }
}

#[test]
fn petersen_and_wagner() {
    check(&petersen(), 1, 1);
    check(&mobius_ladder(8), 1, 1);
}
