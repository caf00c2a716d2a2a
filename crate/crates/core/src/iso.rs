//! Bounded backtracking isomorphism test for small graphs.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Refusal, Result};
use crate::graph::Graph;

/// Vertex-count limit of [`isomorphic`].
pub const DEFAULT_LIMIT: usize = 16;

/// Isomorphism test for graphs with at most [`DEFAULT_LIMIT`] vertices.
pub fn isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    isomorphic_with_limit(g1, g2, DEFAULT_LIMIT)
}

pub fn isomorphic_with_limit(g1: &Graph, g2: &Graph, limit: usize) -> Result<bool> {
    if g1.n().max(g2.n()) > limit {
        return Err(Refusal {
            reason: format!("isomorphism limited to {limit} vertices, got {}", g1.n().max(g2.n())),
            stats: Default::default(),
        }
        .into());
    }
    Ok(find_isomorphism(g1, g2, &Budget::unlimited())?.is_some())
}

/// Color refinement on the disjoint pair; returns a stable color per vertex.
fn refine(g1: &Graph, g2: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n1 = g1.n();
    let total = n1 + g2.n();
    let nb = |v: usize| -> Vec<usize> {
        if v < n1 {
            g1.neighbors(v).to_vec()
        } else {
            g2.neighbors(v - n1).iter().map(|&w| w + n1).collect()
        }
    };
    let adj: Vec<Vec<usize>> = (0..total).map(nb).collect();
    let mut color: Vec<usize> = adj.iter().map(Vec::len).collect();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..total)
            .map(|v| {
                let mut s: Vec<usize> = adj[v].iter().map(|&w| color[w]).collect();
                s.sort_unstable();
                (color[v], s)
            })
            .collect();
        let mut keys = sigs.clone();
        keys.sort();
        keys.dedup();
        let index: HashMap<_, _> = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let next: Vec<usize> = sigs.drain(..).map(|s| index[&s]).collect();
        let classes = |c: &[usize]| {
            let mut d = c.to_vec();
            d.sort_unstable();
            d.dedup();
            d.len()
        };
        let done = classes(&next) == classes(&color);
        color = next;
        if done {
            break;
        }
    }
    (color[..n1].to_vec(), color[n1..].to_vec())
}

/// Search for a bijection `f` with `uv ∈ E(g1) ⇔ f(u)f(v) ∈ E(g2)`.
pub fn find_isomorphism(g1: &Graph, g2: &Graph, budget: &Budget) -> std::result::Result<Option<Vec<usize>>, Refusal> {
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return Ok(None);
    }
    let n = g1.n();
    let (c1, c2) = refine(g1, g2);
    let mut h1 = c1.clone();
    let mut h2 = c2.clone();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return Ok(None);
    }
    // order g1's vertices: rarest color first, then stay connected
    let mut freq: HashMap<usize, usize> = HashMap::new();
    for &c in &c1 {
        *freq.entry(c).or_default() += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let pick = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let touch = g1.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (touch, usize::MAX - freq[&c1[v]], g1.degree(v), usize::MAX - v)
            })
            .unwrap();
        placed[pick] = true;
        order.push(pick);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let ok = extend(g1, g2, &c1, &c2, &order, 0, &mut map, &mut used, budget)?;
    Ok(if ok { Some(map) } else { None })
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g1: &Graph,
    g2: &Graph,
    c1: &[usize],
    c2: &[usize],
    order: &[usize],
    i: usize,
    map: &mut [usize],
    used: &mut [bool],
    budget: &Budget,
) -> std::result::Result<bool, Refusal> {
    if i == order.len() {
        return Ok(true);
    }
    budget.tick()?;
    let v = order[i];
    for w in 0..g2.n() {
        if used[w] || c2[w] != c1[v] {
            continue;
        }
        let consistent = order[..i].iter().all(|&u| g1.has_edge(u, v) == g2.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g1, g2, c1, c2, order, i + 1, map, used, budget)? {
            return Ok(true);
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::build(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_cases() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(isomorphic(&k3, &cycle(3)).unwrap());
        let two_triangles = k3.disjoint_union(&k3);
        assert!(!isomorphic(&two_triangles, &cycle(6)).unwrap());
        let k33 = Graph::build(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        let prism = Graph::build(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(!isomorphic(&k33, &prism).unwrap());
    }

    #[test]
    fn refuses_large() {
        assert!(isomorphic(&cycle(20), &cycle(20)).is_err());
        assert!(isomorphic_with_limit(&cycle(20), &cycle(20), 20).unwrap());
    }

    #[test]
    fn relabelled_graph_is_isomorphic() {
        let g = Graph::build(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap();
        let perm = [3, 5, 0, 1, 4, 2];
        let h = Graph::build(6, &g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect::<Vec<_>>()).unwrap();
        assert!(isomorphic(&g, &h).unwrap());
        let f = find_isomorphism(&g, &h, &Budget::unlimited()).unwrap().unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(f[u], f[v]));
        }
    }
}
