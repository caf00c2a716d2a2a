//! Certificate checkers. Self-contained: they share no code with the
//! searchers that produce the certificates.

use std::collections::{BTreeSet, VecDeque};

use super::{CoverCert, Expansion, MinorModel, PackKind, PackingCert};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn bad(msg: String) -> Error {
    Error::Certificate(msg)
}

fn connected_within(g: &Graph, set: &[usize]) -> bool {
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    let Some(&start) = set.first() else { return false };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if inside.contains(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len() == inside.len()
}

/// Branch sets are non-empty, in range, pairwise disjoint and connected, and
/// every pattern edge is realized by a host edge between branch sets.
pub fn verify_model(h: &Graph, g: &Graph, model: &MinorModel) -> Result<()> {
    if model.branch.len() != h.n() {
        return Err(bad(format!("{} branch sets for a pattern on {} vertices", model.branch.len(), h.n())));
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (p, set) in model.branch.iter().enumerate() {
        if set.is_empty() {
            return Err(bad(format!("branch set of pattern vertex {p} is empty")));
        }
        for &x in set {
            if x >= g.n() {
                return Err(bad(format!("host vertex {x} out of range")));
            }
            if owner[x] != usize::MAX {
                return Err(bad(format!("host vertex {x} in branch sets {} and {p}", owner[x])));
            }
            owner[x] = p;
        }
        if !connected_within(g, set) {
            return Err(bad(format!("branch set of pattern vertex {p} is not connected")));
        }
    }
    for p in 0..h.n() {
        for &q in h.neighbors(p) {
            if p < q {
                let ok = model.branch[p].iter().any(|&x| g.neighbors(x).iter().any(|&y| owner[y] == q));
                if !ok {
                    return Err(bad(format!("pattern edge {p}-{q} has no host edge")));
                }
            }
        }
    }
    Ok(())
}

/// Every host is a valid model of its pattern, no vertex is used more than
/// `multiplicity` times, hosts have distinct vertex sets, and the pattern
/// constraints of the packing kind hold.
pub fn verify_packing(z: &[Graph], g: &Graph, cert: &PackingCert) -> Result<()> {
    if cert.multiplicity != 1 && cert.multiplicity != 2 {
        return Err(bad(format!("multiplicity {} is neither 1 nor 2", cert.multiplicity)));
    }
    let mut uses = vec![0u32; g.n()];
    let mut sets = BTreeSet::new();
    for (i, host) in cert.hosts.iter().enumerate() {
        let Some(h) = z.get(host.pattern) else {
            return Err(bad(format!("host {i} names pattern {} outside the antichain", host.pattern)));
        };
        verify_model(h, g, &host.model).map_err(|e| bad(format!("host {i}: {e}")))?;
        let mut vs: Vec<usize> = host.model.branch.iter().flatten().copied().collect();
        vs.sort_unstable();
        for &x in &vs {
            uses[x] += 1;
            if uses[x] > cert.multiplicity as u32 {
                return Err(bad(format!("host vertex {x} used {} times, limit {}", uses[x], cert.multiplicity)));
            }
        }
        if !sets.insert(vs) {
            return Err(bad(format!("host {i} repeats the vertex set of an earlier host")));
        }
    }
    if cert.kind == PackKind::Single {
        if let Some(first) = cert.hosts.first() {
            if cert.hosts.iter().any(|x| x.pattern != first.pattern) {
                return Err(bad("single-pattern packing mixes patterns".into()));
            }
        }
    }
    Ok(())
}

/// `G − S` has no model of any pattern, as re-checked by `no_minor`, which
/// must return `Ok(true)` only when absence is proven.
pub fn verify_cover(z: &[Graph], g: &Graph, cert: &CoverCert, no_minor: impl Fn(&Graph, &Graph) -> Result<bool>) -> Result<()> {
    let mut s = cert.s.clone();
    s.sort_unstable();
    s.dedup();
    if s.len() != cert.s.len() {
        return Err(bad("cover lists a vertex twice".into()));
    }
    if let Some(&v) = s.iter().find(|&&v| v >= g.n()) {
        return Err(bad(format!("cover vertex {v} out of range")));
    }
    let rest = g.delete_vertices(&s)?;
    for (i, h) in z.iter().enumerate() {
        if !no_minor(h, &rest)? {
            return Err(bad(format!("pattern {i} survives deletion of the cover")));
        }
    }
    Ok(())
}

/// Every vertex of the expansion outside T has degree two in it, and its
/// edges are host edges.
pub fn verify_expansion(g: &Graph, x: &Expansion) -> Result<()> {
    let vs: BTreeSet<usize> = x.vertices.iter().copied().collect();
    if vs.len() != x.vertices.len() {
        return Err(bad("expansion lists a vertex twice".into()));
    }
    let mut seen = BTreeSet::new();
    let mut deg = std::collections::BTreeMap::new();
    for &(u, v) in &x.edges {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(bad(format!("edge {u}-{v} listed twice")));
        }
        if !vs.contains(&u) || !vs.contains(&v) {
            return Err(bad(format!("edge {u}-{v} leaves the expansion")));
        }
        if !g.has_edge(u, v) {
            return Err(bad(format!("{u}-{v} is not a host edge")));
        }
        *deg.entry(u).or_insert(0) += 1;
        *deg.entry(v).or_insert(0) += 1;
    }
    for &v in &vs {
        if !x.t.contains(&v) && deg.get(&v).copied().unwrap_or(0) != 2 {
            return Err(bad(format!("vertex {v} outside T has degree {}", deg.get(&v).copied().unwrap_or(0))));
        }
    }
    Ok(())
}
