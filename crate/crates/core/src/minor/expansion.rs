use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{verify_model, Expansion, MinorModel};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Edge-minimal host of a valid model: a spanning tree of each branch set,
/// pruned to the vertices that carry a connecting edge, plus one host edge
/// per pattern edge. `T` is the set of vertices whose degree is not two.
pub fn minimize_host(h: &Graph, g: &Graph, model: &MinorModel) -> Result<Expansion> {
    verify_model(h, g, model)?;
    let mut owner = vec![usize::MAX; g.n()];
    for (p, s) in model.branch.iter().enumerate() {
        for &x in s {
            owner[x] = p;
        }
    }
    // one connecting edge per pattern edge, least host indices first
    let mut connecting = Vec::new();
    for (p, q) in h.edges() {
        let mut best = None;
        for &x in &model.branch[p] {
            for &y in g.neighbors(x) {
                if owner[y] == q {
                    let e = (x.min(y), x.max(y));
                    if best.is_none_or(|b| e < b) {
                        best = Some(e);
                    }
                }
            }
        }
        connecting.push(best.expect("verified model realizes every pattern edge"));
    }
    let mut terminals = BTreeSet::new();
    for &(x, y) in &connecting {
        terminals.insert(x);
        terminals.insert(y);
    }
    let mut edges: BTreeSet<(usize, usize)> = connecting.iter().copied().collect();
    let mut vertices = BTreeSet::new();
    for (p, set) in model.branch.iter().enumerate() {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        let root = sorted.iter().copied().find(|x| terminals.contains(x)).unwrap_or(sorted[0]);
        // BFS tree inside the branch set, neighbours in ascending order
        let mut parent = BTreeMap::from([(root, root)]);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if owner[y] == p && !parent.contains_key(&y) {
                    parent.insert(y, x);
                    queue.push_back(y);
                }
            }
        }
        let mut tree: BTreeMap<usize, BTreeSet<usize>> = sorted.iter().map(|&x| (x, BTreeSet::new())).collect();
        for (&x, &px) in &parent {
            if x != px {
                tree.get_mut(&x).unwrap().insert(px);
                tree.get_mut(&px).unwrap().insert(x);
            }
        }
        // strip non-terminal leaves
        while tree.len() > 1 {
            let Some((&x, _)) = tree.iter().find(|(x, nb)| nb.len() <= 1 && !terminals.contains(x)) else { break };
            for y in tree.remove(&x).unwrap() {
                tree.get_mut(&y).unwrap().remove(&x);
            }
        }
        for (&x, nb) in &tree {
            vertices.insert(x);
            for &y in nb {
                edges.insert((x.min(y), x.max(y)));
            }
        }
    }
    let mut deg: BTreeMap<usize, usize> = vertices.iter().map(|&v| (v, 0)).collect();
    for &(x, y) in &edges {
        *deg.get_mut(&x).unwrap() += 1;
        *deg.get_mut(&y).unwrap() += 1;
    }
    let t: BTreeSet<usize> = deg.iter().filter(|(_, &d)| d != 2).map(|(&v, _)| v).collect();
    let bound = h.n() * h.n();
    if t.len() > bound.max(1) {
        return Err(Error::Precondition(format!("|T| = {} exceeds |V(H)|² = {bound}", t.len())));
    }
    Ok(Expansion { vertices: vertices.into_iter().collect(), edges: edges.into_iter().collect(), t })
}

/// Replace each thread (maximal path through degree-two vertices) by a
/// shortest path in `g` between its ends that avoids the rest of the
/// expansion, until no thread gets shorter. The result is homeomorphic to
/// the input, so it still hosts the same pattern.
pub(crate) fn shorten_expansion(g: &Graph, x: &Expansion) -> Expansion {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = x.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
    for &(u, v) in &x.edges {
        adj.get_mut(&u).unwrap().insert(v);
        adj.get_mut(&v).unwrap().insert(u);
    }
    let t = &x.t;
    loop {
        let mut improved = false;
        let ends: Vec<usize> = t.iter().copied().collect();
        'threads: for &a in &ends {
            let firsts: Vec<usize> = adj[&a].iter().copied().collect();
            for first in firsts {
                if !adj[&a].contains(&first) {
                    continue;
                }
                // walk the thread a - first - ... - b
                let mut inner = Vec::new();
                let (mut prev, mut cur) = (a, first);
                while !t.contains(&cur) {
                    inner.push(cur);
                    let next = adj[&cur].iter().copied().find(|&w| w != prev).unwrap();
                    prev = cur;
                    cur = next;
                }
                let b = cur;
                if inner.is_empty() || b == a {
                    continue;
                }
                // BFS from a to b through host vertices outside the expansion (or on this thread)
                let mut allowed = vec![true; g.n()];
                for &v in adj.keys() {
                    allowed[v] = false;
                }
                for &v in &inner {
                    allowed[v] = true;
                }
                let mut parent = vec![usize::MAX; g.n()];
                parent[a] = a;
                let mut queue = VecDeque::from([a]);
                let mut found = None;
                while let Some(u) = queue.pop_front() {
                    for &w in g.neighbors(u) {
                        if w == b && u != a {
                            found = Some(u);
                            break;
                        }
                        if allowed[w] && parent[w] == usize::MAX {
                            parent[w] = u;
                            queue.push_back(w);
                        }
                    }
                    if found.is_some() {
                        break;
                    }
                }
                let Some(mut u) = found else { continue };
                let mut path = vec![];
                while u != a {
                    path.push(u);
                    u = parent[u];
                }
                if path.len() >= inner.len() {
                    continue;
                }
                let mut chain = vec![a];
                chain.extend(inner.iter().copied());
                chain.push(b);
                for w in chain.windows(2) {
                    adj.get_mut(&w[0]).unwrap().remove(&w[1]);
                    adj.get_mut(&w[1]).unwrap().remove(&w[0]);
                }
                for v in &inner {
                    adj.remove(v);
                }
                path.reverse();
                let mut chain = vec![a];
                chain.extend(path);
                chain.push(b);
                for w in chain.windows(2) {
                    adj.entry(w[0]).or_default().insert(w[1]);
                    adj.entry(w[1]).or_default().insert(w[0]);
                }
                improved = true;
                break 'threads;
            }
        }
        if !improved {
            break;
        }
    }
    let mut edges = Vec::new();
    for (&u, nb) in &adj {
        for &v in nb {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Expansion { vertices: adj.keys().copied().collect(), edges, t: t.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::complete;

    #[test]
    fn identity_k4() {
        let k4 = complete(4);
        let x = minimize_host(&k4, &k4, &MinorModel::identity(4)).unwrap();
        assert_eq!(x.vertices, vec![0, 1, 2, 3]);
        assert_eq!(x.edges.len(), 6);
        assert_eq!(x.t.len(), 4);
    }

    #[test]
    fn spur_is_removed() {
        // triangle 0-1-2 with a pendant path 2-3-4 inside branch set of 2
        let g = Graph::build(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let m = MinorModel { branch: vec![vec![0], vec![1], vec![2, 3, 4]] };
        let x = minimize_host(&complete(3), &g, &m).unwrap();
        assert_eq!(x.vertices, vec![0, 1, 2]);
        super::super::verify_expansion(&g, &x).unwrap();
    }
}
