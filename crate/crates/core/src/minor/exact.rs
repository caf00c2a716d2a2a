//! Exhaustive minor test for small hosts: every sequence of vertex deletions
//! and edge contractions down to the pattern's order, memoized on the
//! resulting adjacency, followed by a spanning-subgraph test.

use std::collections::HashSet;

use super::MinorModel;
use crate::budget::Budget;
use crate::error::Refusal;
use crate::graph::Graph;

/// Hosts with more vertices are not searched exhaustively.
pub const MAX_EXACT_VERTICES: usize = 64;

fn bits(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |a, &w| a | 1 << w)).collect()
}

fn squeeze(w: u64, idx: usize) -> u64 {
    let low = w & ((1u64 << idx) - 1);
    let high = if idx + 1 >= 64 { 0 } else { (w >> (idx + 1)) << idx };
    low | high
}

fn delete(adj: &[u64], sets: &[u64], v: usize) -> (Vec<u64>, Vec<u64>) {
    let mut a = Vec::with_capacity(adj.len() - 1);
    let mut s = Vec::with_capacity(adj.len() - 1);
    for x in 0..adj.len() {
        if x != v {
            a.push(squeeze(adj[x], v));
            s.push(sets[x]);
        }
    }
    (a, s)
}

fn contract(adj: &[u64], sets: &[u64], u: usize, v: usize) -> (Vec<u64>, Vec<u64>) {
    let mut a = adj.to_vec();
    let mut s = sets.to_vec();
    a[u] = (adj[u] | adj[v]) & !(1u64 << u) & !(1u64 << v);
    for x in 0..a.len() {
        if x != u && x != v && adj[x] >> v & 1 == 1 {
            a[x] |= 1u64 << u;
        }
    }
    s[u] |= sets[v];
    delete(&a, &s, v)
}

fn edge_count(adj: &[u64]) -> usize {
    adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
}

/// Injective map of pattern vertices onto the host's vertices preserving
/// adjacency (host may have extra edges).
fn spanning_subgraph(h: &[u64], g: &[u64], budget: &Budget) -> Result<Option<Vec<usize>>, Refusal> {
    let n = h.len();
    // most constrained first: descending degree, then neighbours of placed vertices
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&p| placed >> p & 1 == 0)
            .max_by_key(|&p| ((h[p] & placed).count_ones(), h[p].count_ones(), usize::MAX - p))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    let mut f = vec![usize::MAX; n];
    let hdeg: Vec<u32> = h.iter().map(|w| w.count_ones()).collect();
    let gdeg: Vec<u32> = g.iter().map(|w| w.count_ones()).collect();
    fn rec(i: usize, order: &[usize], h: &[u64], g: &[u64], hdeg: &[u32], gdeg: &[u32], f: &mut [usize], used: u64, budget: &Budget) -> Result<bool, Refusal> {
        if i == order.len() {
            return Ok(true);
        }
        budget.tick()?;
        let p = order[i];
        let mut cand = !used & if g.len() == 64 { u64::MAX } else { (1u64 << g.len()) - 1 };
        let mut nb = h[p];
        while nb != 0 {
            let q = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if f[q] != usize::MAX {
                cand &= g[f[q]];
            }
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if gdeg[x] < hdeg[p] {
                continue;
            }
            f[p] = x;
            if rec(i + 1, order, h, g, hdeg, gdeg, f, used | 1 << x, budget)? {
                return Ok(true);
            }
            f[p] = usize::MAX;
        }
        Ok(false)
    }
    if rec(0, &order, h, g, &hdeg, &gdeg, &mut f, 0, budget)? {
        Ok(Some(f))
    } else {
        Ok(None)
    }
}

struct Exact<'a> {
    h: Vec<u64>,
    hm: usize,
    seen: HashSet<Vec<u64>>,
    budget: &'a Budget,
}

impl Exact<'_> {
    fn rec(&mut self, adj: Vec<u64>, sets: Vec<u64>) -> Result<Option<Vec<u64>>, Refusal> {
        let n = adj.len();
        if n < self.h.len() || edge_count(&adj) < self.hm {
            return Ok(None);
        }
        if !self.seen.insert(adj.clone()) {
            return Ok(None);
        }
        self.budget.tick()?;
        if n == self.h.len() {
            return Ok(spanning_subgraph(&self.h, &adj, self.budget)?.map(|f| f.iter().map(|&x| sets[x]).collect()));
        }
        for u in 0..n {
            let mut nb = adj[u] >> u >> 1;
            let mut v = u;
            while nb != 0 {
                let step = nb.trailing_zeros() as usize + 1;
                v += step;
                nb >>= step;
                let (a, s) = contract(&adj, &sets, u, v);
                if let Some(r) = self.rec(a, s)? {
                    return Ok(Some(r));
                }
            }
        }
        for v in 0..n {
            let (a, s) = delete(&adj, &sets, v);
            if let Some(r) = self.rec(a, s)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }
}

/// Exact decision; hosts must have at most [`MAX_EXACT_VERTICES`] vertices.
pub fn exact_minor(h: &Graph, g: &Graph, budget: &Budget) -> Result<Option<MinorModel>, Refusal> {
    assert!(g.n() <= MAX_EXACT_VERTICES);
    if h.n() == 0 {
        return Ok(Some(MinorModel { branch: Vec::new() }));
    }
    let mut ex = Exact { h: bits(h), hm: h.m(), seen: HashSet::new(), budget };
    let sets: Vec<u64> = (0..g.n()).map(|v| 1u64 << v).collect();
    Ok(ex.rec(bits(g), sets)?.map(|masks| MinorModel {
        branch: masks.iter().map(|&m| (0..64).filter(|&x| m >> x & 1 == 1).collect()).collect(),
    }))
}

/// Equal-order case: `h` is a minor of `g` iff it is a spanning subgraph.
pub(crate) fn spanning_model(h: &Graph, g: &Graph, budget: &Budget) -> Result<Option<MinorModel>, Refusal> {
    debug_assert_eq!(h.n(), g.n());
    Ok(spanning_subgraph(&bits(h), &bits(g), budget)?.map(|f| MinorModel { branch: f.iter().map(|&x| vec![x]).collect() }))
}
