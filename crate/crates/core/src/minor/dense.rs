//! Density shortcut for clique minors: a graph with more than `2^k·|V|`
//! edges has a `K_k` minor, and one can be extracted greedily.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{verify_model, MinorModel};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DenseOutcome {
    /// A minimal `K_k` model.
    Model(MinorModel),
    /// `|E| <= 2^k·|V|`; the shortcut says nothing.
    Sparse { edges: usize, bound: usize },
}

/// Working minor: live vertices, adjacency, and the host set behind each.
struct Minor {
    adj: Vec<BTreeSet<usize>>,
    sets: Vec<Vec<usize>>,
    live: BTreeSet<usize>,
    m: usize,
}

impl Minor {
    fn of(g: &Graph) -> Minor {
        Minor {
            adj: (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            sets: (0..g.n()).map(|v| vec![v]).collect(),
            live: (0..g.n()).collect(),
            m: g.m(),
        }
    }

    fn delete(&mut self, v: usize) {
        for w in std::mem::take(&mut self.adj[v]) {
            self.adj[w].remove(&v);
            self.m -= 1;
        }
        self.live.remove(&v);
    }

    fn contract(&mut self, u: usize, v: usize) {
        let nv = std::mem::take(&mut self.adj[v]);
        for w in nv {
            self.adj[w].remove(&v);
            self.m -= 1;
            if w != u && self.adj[u].insert(w) {
                self.adj[w].insert(u);
                self.m += 1;
            }
        }
        let moved = std::mem::take(&mut self.sets[v]);
        self.sets[u].extend(moved);
        self.live.remove(&v);
    }

    /// Reduce to a minor-minimal graph with `|E| >= d·|V|` (and `|V| >= 1`).
    fn minimize(&mut self, d: usize) {
        loop {
            let n = self.live.len();
            let del = self.live.iter().copied().find(|&v| n > 1 && self.m - self.adj[v].len() >= d * (n - 1));
            if let Some(v) = del {
                self.delete(v);
                continue;
            }
            let mut con = None;
            'outer: for &u in &self.live {
                for &v in &self.adj[u] {
                    let common = self.adj[u].intersection(&self.adj[v]).count();
                    if self.m - 1 - common >= d * (n - 1) {
                        con = Some((u, v));
                        break 'outer;
                    }
                }
            }
            match con {
                Some((u, v)) => self.contract(u, v),
                None => break,
            }
        }
    }
}

/// Clique model of order `k` in the minor, Mader style: minimize with
/// density `2^(k-3)`, then recurse into the neighbourhood of a vertex.
fn clique(mut mi: Minor, k: usize) -> Option<Vec<Vec<usize>>> {
    if k == 0 {
        return Some(Vec::new());
    }
    if k == 1 {
        let v = *mi.live.iter().next()?;
        return Some(vec![mi.sets[v].clone()]);
    }
    if k == 2 {
        let u = *mi.live.iter().find(|&&u| !mi.adj[u].is_empty())?;
        let v = *mi.adj[u].iter().next()?;
        return Some(vec![mi.sets[u].clone(), mi.sets[v].clone()]);
    }
    let d = 1usize << (k - 3);
    if mi.m < d * mi.live.len() {
        return None;
    }
    mi.minimize(d);
    let x = *mi.live.iter().min_by_key(|&&v| mi.adj[v].len())?;
    let nb: BTreeSet<usize> = mi.adj[x].clone();
    let mut sub = Minor { adj: vec![BTreeSet::new(); mi.adj.len()], sets: mi.sets.clone(), live: nb.clone(), m: 0 };
    for &u in &nb {
        for &w in &mi.adj[u] {
            if nb.contains(&w) {
                sub.adj[u].insert(w);
            }
        }
        sub.m += sub.adj[u].len();
    }
    sub.m /= 2;
    let mut rest = clique(sub, k - 1)?;
    rest.push(mi.sets[x].clone());
    Some(rest)
}

/// Drop vertices from branch sets while the model stays valid.
fn prune(h: &Graph, g: &Graph, mut m: MinorModel) -> MinorModel {
    for p in 0..m.branch.len() {
        let mut i = 0;
        while i < m.branch[p].len() {
            if m.branch[p].len() > 1 {
                let mut trial = m.clone();
                trial.branch[p].remove(i);
                if verify_model(h, g, &trial).is_ok() {
                    m = trial;
                    continue;
                }
            }
            i += 1;
        }
    }
    m
}

pub fn dense_clique_minor(g: &Graph, k: usize) -> DenseOutcome {
    assert!(k >= 3, "clique order must be at least 3");
    let bound = (1usize << k.min(60)) * g.n();
    if g.m() <= bound {
        return DenseOutcome::Sparse { edges: g.m(), bound };
    }
    let sets = clique(Minor::of(g), k).expect("density above 2^(k-3) forces a clique minor");
    let h = crate::family::complete(k);
    let mut m = MinorModel { branch: sets };
    for s in &mut m.branch {
        s.sort_unstable();
    }
    debug_assert!(verify_model(&h, g, &m).is_ok());
    DenseOutcome::Model(prune(&h, g, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete, cycle};

    #[test]
    fn examples() {
        match dense_clique_minor(&complete(20), 3) {
            DenseOutcome::Model(m) => verify_model(&complete(3), &complete(20), &m).unwrap(),
            other => panic!("{other:?}"),
        }
        assert_eq!(dense_clique_minor(&cycle(100), 3), DenseOutcome::Sparse { edges: 100, bound: 800 });
        assert_eq!(dense_clique_minor(&complete(10), 4), DenseOutcome::Sparse { edges: 45, bound: 160 });
    }

    #[test]
    fn denser_cliques() {
        // K_40 has 780 edges > 2^4 · 40
        let g = complete(40);
        match dense_clique_minor(&g, 4) {
            DenseOutcome::Model(m) => {
                verify_model(&complete(4), &g, &m).unwrap();
                assert!(m.branch.iter().all(|s| s.len() == 1));
            }
            other => panic!("{other:?}"),
        }
    }
}
