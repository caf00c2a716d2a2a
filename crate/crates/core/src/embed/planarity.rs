//! Left-right planarity test (de Fraysseix–Rosenstiehl, in Brandes'
//! formulation) with embedding construction, plus Kuratowski extraction.

use serde::{Deserialize, Serialize};

use super::Embedding;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// An edge-minimal non-planar subgraph: a subdivision of K5 or K3,3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiEvidence {
    pub kind: KuratowskiKind,
    pub edges: Vec<(usize, usize)>,
    /// Branch vertices (degree ≥ 3 in the subdivision).
    pub branch: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(Embedding),
    NonPlanar(KuratowskiEvidence),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

/// Planarity with a witness either way.
pub fn is_planar(g: &Graph) -> Planarity {
    match planar_embedding(g) {
        Some(e) => Planarity::Planar(e),
        None => Planarity::NonPlanar(kuratowski_subgraph(g).expect("non-planar graph has a Kuratowski subgraph")),
    }
}

/// Planarity without evidence.
pub fn planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// Kuratowski subgraph found by deleting edges in lexicographic order
/// whenever the rest stays non-planar. `None` if `g` is planar.
pub fn kuratowski_subgraph(g: &Graph) -> Option<KuratowskiEvidence> {
    kuratowski_subgraph_with_order(g, &g.edges())
}

/// As [`kuratowski_subgraph`], trying edge deletions in the given order.
pub fn kuratowski_subgraph_with_order(g: &Graph, order: &[(usize, usize)]) -> Option<KuratowskiEvidence> {
    if planar(g) {
        return None;
    }
    let mut h = g.clone();
    for &(u, v) in order {
        let h2 = h.delete_edge(u, v).expect("edge of current subgraph");
        if !planar(&h2) {
            h = h2;
        }
    }
    let branch: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 3).collect();
    let kind = if branch.len() == 5 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
    debug_assert!(
        (branch.len() == 5 && branch.iter().all(|&v| h.degree(v) == 4))
            || (branch.len() == 6 && branch.iter().all(|&v| h.degree(v) == 3))
    );
    Some(KuratowskiEvidence { kind, edges: h.edges(), branch })
}

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'g> {
    g: &'g Graph,
    // oriented edges, indexed by undirected edge id
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    out: Vec<Vec<usize>>,
    edge_id: Vec<Vec<usize>>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
    roots: Vec<usize>,
}

/// A planar rotation system, or `None` if `g` is non-planar.
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    let n = g.n();
    let m = g.m();
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let edges = g.edges();
    let mut edge_id: Vec<Vec<usize>> = (0..n).map(|v| vec![usize::MAX; g.degree(v)]).collect();
    for (id, &(u, v)) in edges.iter().enumerate() {
        let iu = g.neighbors(u).binary_search(&v).unwrap();
        let iv = g.neighbors(v).binary_search(&u).unwrap();
        edge_id[u][iu] = id;
        edge_id[v][iv] = id;
    }
    let mut lr = Lr {
        g,
        src: vec![0; m],
        dst: vec![0; m],
        oriented: vec![false; m],
        out: vec![Vec::new(); n],
        edge_id,
        height: vec![None; n],
        parent_edge: vec![None; n],
        lowpt: vec![0; m],
        lowpt2: vec![0; m],
        nesting_depth: vec![0; m],
        reference: vec![None; m],
        side: vec![1; m],
        stack: Vec::new(),
        stack_bottom: vec![0; m],
        lowpt_edge: vec![None; m],
        left_ref: vec![usize::MAX; n],
        right_ref: vec![usize::MAX; n],
        roots: Vec::new(),
    };
    for v in 0..n {
        if lr.height[v].is_none() {
            lr.height[v] = Some(0);
            lr.roots.push(v);
            lr.dfs_orientation(v);
        }
    }
    for v in 0..n {
        let mut o = lr.out[v].clone();
        o.sort_by_key(|&e| lr.nesting_depth[e]);
        lr.out[v] = o;
    }
    for r in lr.roots.clone() {
        if !lr.dfs_testing(r) {
            return None;
        }
    }
    for e in 0..m {
        lr.nesting_depth[e] *= lr.sign(e);
    }
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let mut o = lr.out[v].clone();
        o.sort_by_key(|&e| lr.nesting_depth[e]);
        rot[v] = o.iter().map(|&e| lr.dst[e]).collect();
        lr.out[v] = o;
    }
    for r in lr.roots.clone() {
        lr.dfs_embedding(r, &mut rot);
    }
    Some(Embedding::orientable(rot))
}

impl Lr<'_> {
    fn dfs_orientation(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for (i, &w) in self.g.neighbors(v).iter().enumerate() {
            let vw = self.edge_id[v][i];
            if self.oriented[vw] {
                continue;
            }
            self.oriented[vw] = true;
            self.src[vw] = v;
            self.dst[vw] = w;
            self.out[v].push(vw);
            let hv = self.height[v].unwrap();
            self.lowpt[vw] = hv;
            self.lowpt2[vw] = hv;
            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(vw);
                    self.height[w] = Some(hv + 1);
                    self.dfs_orientation(w);
                }
                Some(hw) => self.lowpt[vw] = hw,
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < hv {
                self.nesting_depth[vw] += 1;
            }
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) if !i.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.unwrap()];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.unwrap()];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn dfs_testing(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let out = self.out[v].clone();
        for (idx, &ei) in out.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.dfs_testing(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval { low: Some(ei), high: Some(ei) },
                });
            }
            if self.lowpt[ei] < self.height[v].unwrap() {
                let e = e.expect("return edge below the root");
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("conflict pair");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low.unwrap()] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    let pl = p.right.low.unwrap();
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low.unwrap()] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        let hu = self.height[u].unwrap();
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            let top = self.stack.last().expect("return edges of e are on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                (Some(l), None) => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        // iterative version of the recursive sign resolution
        let mut chain = vec![e];
        while let Some(r) = self.reference[*chain.last().unwrap()] {
            chain.push(r);
        }
        for i in (0..chain.len() - 1).rev() {
            let (x, r) = (chain[i], chain[i + 1]);
            self.side[x] *= self.side[r];
            self.reference[x] = None;
        }
        self.side[e]
    }

    fn dfs_embedding(&mut self, v: usize, rot: &mut [Vec<usize>]) {
        let out = self.out[v].clone();
        for ei in out {
            let w = self.dst[ei];
            if self.parent_edge[w] == Some(ei) {
                rot[w].insert(0, v);
                self.left_ref[v] = w;
                self.right_ref[v] = w;
                self.dfs_embedding(w, rot);
            } else if self.side[ei] == 1 {
                // clockwise right after right_ref[w]
                let at = rot[w].iter().position(|&x| x == self.right_ref[w]).unwrap();
                rot[w].insert(at + 1, v);
            } else {
                // counter-clockwise right before left_ref[w]
                let at = rot[w].iter().position(|&x| x == self.left_ref[w]).unwrap();
                rot[w].insert(at, v);
                self.left_ref[w] = v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::trace;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::build(n, &e).unwrap()
    }

    #[test]
    fn small_graphs() {
        assert!(planar(&complete(4)));
        assert!(!planar(&complete(5)));
        let k33 = Graph::build(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert!(!planar(&k33));
        match is_planar(&k33) {
            Planarity::NonPlanar(ev) => assert_eq!(ev.kind, KuratowskiKind::K33),
            _ => panic!(),
        }
        match is_planar(&complete(5)) {
            Planarity::NonPlanar(ev) => assert_eq!(ev.kind, KuratowskiKind::K5),
            _ => panic!(),
        }
    }

    #[test]
    fn witness_is_planar() {
        let e = planar_embedding(&complete(4)).unwrap();
        assert_eq!(trace(&complete(4), &e).unwrap().euler_genus, 0);
    }
}
