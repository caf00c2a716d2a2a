//! Integral, half-integral and mixed packings.

use serde::Serialize;

use super::{minor_search, AbsenceProof, MinorAnswer, MinorModel, MinorOptions, PackKind, PackedHost, PackingCert};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Hosts up to this order get an exhaustive half-integral search.
pub const HALF_EXACT_LIMIT: usize = 9;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PackOutcome {
    Found(PackingCert),
    /// No packing of the requested size; one proof per pattern combination
    /// tried (integral), or an exhaustive half-integral search.
    Absent { proofs: Vec<AbsenceProof> },
}

/// Largest packing size with a certificate, and the proof that one more
/// host is impossible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PackValue {
    pub value: usize,
    pub certificate: PackingCert,
    pub upper: Vec<AbsenceProof>,
}

/// Disjoint union of the listed patterns, and the offset of each copy.
fn union_of(z: &[Graph], picks: &[usize]) -> (Graph, Vec<usize>) {
    let mut g = Graph::empty(0);
    let mut offsets = Vec::new();
    for &i in picks {
        offsets.push(g.n());
        g = g.disjoint_union(&z[i]);
    }
    (g, offsets)
}

fn split_model(z: &[Graph], picks: &[usize], offsets: &[usize], m: &MinorModel) -> Vec<PackedHost> {
    picks
        .iter()
        .zip(offsets)
        .map(|(&i, &off)| PackedHost { pattern: i, model: MinorModel { branch: m.branch[off..off + z[i].n()].to_vec() } })
        .collect()
}

/// Nondecreasing sequences of length `k` over `0..r`.
fn multisets(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(r: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(r, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, k, 0, &mut Vec::new(), &mut out);
    out
}

fn integral(z: &[Graph], g: &Graph, k: usize, kind: PackKind, opts: &MinorOptions) -> Result<PackOutcome> {
    let combos: Vec<Vec<usize>> = match kind {
        PackKind::Single => (0..z.len()).map(|i| vec![i; k]).collect(),
        PackKind::Mixed => multisets(z.len(), k),
    };
    let mut proofs = Vec::new();
    for picks in combos {
        let (pattern, offsets) = union_of(z, &picks);
        match minor_search(&pattern, g, opts)? {
            MinorAnswer::Found(m) => {
                return Ok(PackOutcome::Found(PackingCert { hosts: split_model(z, &picks, &offsets, &m), multiplicity: 1, kind }));
            }
            MinorAnswer::Absent(p) => proofs.push(p),
        }
    }
    Ok(PackOutcome::Absent { proofs })
}

/// Grow the branch sets of a model in `g` until they cover every vertex of
/// their components; `None` if some component holds no branch set.
fn spanning(g: &Graph, m: &MinorModel) -> Option<MinorModel> {
    let mut owner = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for (p, set) in m.branch.iter().enumerate() {
        for &x in set {
            owner[x] = p;
            queue.push_back(x);
        }
    }
    let mut branch = m.branch.clone();
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if owner[y] == usize::MAX {
                owner[y] = owner[x];
                branch[owner[x]].push(y);
                queue.push_back(y);
            }
        }
    }
    owner.iter().all(|&o| o != usize::MAX).then_some(MinorModel { branch })
}

/// Every vertex set `U` such that some model of `h` has vertex set exactly
/// `U`, with such a model, for tiny hosts and connected patterns.
fn host_sets(h: &Graph, g: &Graph, opts: &MinorOptions) -> Result<Vec<(Vec<usize>, MinorModel)>> {
    let n = g.n();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) < h.n() {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let (sub, map) = g.induced(&vs);
        // a connected pattern spans U only when G[U] is connected
        if !sub.is_connected() {
            continue;
        }
        if let MinorAnswer::Found(m) = minor_search(h, &sub, &opts.child())? {
            let m = spanning(&sub, &m).expect("connected host");
            out.push((vs, m.mapped(&map)));
        }
    }
    out.sort_by_key(|(vs, _)| vs.len());
    Ok(out)
}

fn half_exhaustive(z: &[Graph], g: &Graph, k: usize, opts: &MinorOptions) -> Result<Option<PackingCert>> {
    for (i, h) in z.iter().enumerate() {
        let sets = host_sets(h, g, opts)?;
        let mut uses = vec![0u8; g.n()];
        let mut chosen = Vec::new();
        fn rec(sets: &[(Vec<usize>, MinorModel)], start: usize, k: usize, uses: &mut [u8], chosen: &mut Vec<usize>, opts: &MinorOptions) -> Result<bool> {
            if chosen.len() == k {
                return Ok(true);
            }
            opts.budget.tick()?;
            let capacity: usize = uses.iter().map(|&u| 2 - u as usize).sum();
            if let Some((smallest, _)) = sets.get(start) {
                if capacity < (k - chosen.len()) * smallest.len() {
                    return Ok(false);
                }
            }
            for j in start..sets.len() {
                let vs = &sets[j].0;
                if vs.iter().all(|&x| uses[x] < 2) {
                    for &x in vs {
                        uses[x] += 1;
                    }
                    chosen.push(j);
                    if rec(sets, j + 1, k, uses, chosen, opts)? {
                        return Ok(true);
                    }
                    chosen.pop();
                    for &x in vs {
                        uses[x] -= 1;
                    }
                }
            }
            Ok(false)
        }
        if rec(&sets, 0, k, &mut uses, &mut chosen, opts)? {
            let hosts = chosen.iter().map(|&j| PackedHost { pattern: i, model: sets[j].1.clone() }).collect();
            return Ok(Some(PackingCert { hosts, multiplicity: 2, kind: PackKind::Single }));
        }
    }
    Ok(None)
}

/// Search for `k` hosts with each vertex used at most `multiplicity` times.
/// Half-integral mixed packings are not defined (mixed hosts are disjoint).
pub fn pack(z: &[Graph], g: &Graph, k: usize, multiplicity: u8, kind: PackKind, opts: &MinorOptions) -> Result<PackOutcome> {
    if z.is_empty() {
        return Err(Error::Params("empty antichain".into()));
    }
    if k == 0 {
        return Ok(PackOutcome::Found(PackingCert { hosts: Vec::new(), multiplicity, kind }));
    }
    match (multiplicity, kind) {
        (1, _) => integral(z, g, k, kind, opts),
        (2, PackKind::Single) => {
            if let PackOutcome::Found(mut c) = integral(z, g, k, kind, opts)? {
                c.multiplicity = 2;
                return Ok(PackOutcome::Found(c));
            }
            if g.n() > HALF_EXACT_LIMIT {
                return Err(opts
                    .budget
                    .refusal(format!("half-integral search is exhaustive only up to {HALF_EXACT_LIMIT} host vertices"))
                    .into());
            }
            if z.iter().any(|h| h.n() == 0 || !h.is_connected()) {
                return Err(Error::Params("half-integral search needs connected, non-empty patterns".into()));
            }
            let before = opts.budget.used();
            Ok(match half_exhaustive(z, g, k, opts)? {
                Some(c) => PackOutcome::Found(c),
                None => PackOutcome::Absent { proofs: vec![AbsenceProof::Exhaustive { nodes: opts.budget.used() - before }] },
            })
        }
        (2, PackKind::Mixed) => Err(Error::Params("mixed packings are vertex-disjoint; use multiplicity 1".into())),
        _ => Err(Error::Params(format!("multiplicity must be 1 or 2, got {multiplicity}"))),
    }
}

/// Increase the target until the search proves absence.
pub fn pack_value(z: &[Graph], g: &Graph, multiplicity: u8, kind: PackKind, opts: &MinorOptions) -> Result<PackValue> {
    let mut best = PackingCert { hosts: Vec::new(), multiplicity, kind };
    for k in 1.. {
        match pack(z, g, k, multiplicity, kind, opts)? {
            PackOutcome::Found(c) => best = c,
            PackOutcome::Absent { proofs } => return Ok(PackValue { value: k - 1, certificate: best, upper: proofs }),
        }
    }
    unreachable!()
}

/// Pigeonhole: a mixed packing with `k·|Z|` hosts has `k` hosts of one
/// pattern.
pub fn extract_single(cert: &PackingCert, z_len: usize, k: usize) -> Option<PackingCert> {
    let mut by_pattern = vec![Vec::new(); z_len];
    for host in &cert.hosts {
        by_pattern.get_mut(host.pattern)?.push(host.clone());
    }
    let hosts: Vec<PackedHost> = by_pattern.into_iter().find(|v| v.len() >= k)?.into_iter().take(k).collect();
    Some(PackingCert { hosts, multiplicity: cert.multiplicity, kind: PackKind::Single })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::family::{complete, complete_bipartite};
    use crate::minor::verify_packing;

    #[test]
    fn two_disjoint_k5() {
        let b = Budget::default();
        let z = [complete(5)];
        let g = complete(5).copies(2);
        match pack(&z, &g, 2, 1, PackKind::Single, &MinorOptions::new(&b)).unwrap() {
            PackOutcome::Found(c) => verify_packing(&z, &g, &c).unwrap(),
            other => panic!("{other:?}"),
        }
        let v = pack_value(&z, &g, 1, PackKind::Single, &MinorOptions::new(&b)).unwrap();
        assert_eq!(v.value, 2);
    }

    #[test]
    fn mixed_and_extraction() {
        let b = Budget::default();
        let z = [complete(5), complete_bipartite(3, 3)];
        let g = complete(5).disjoint_union(&complete_bipartite(3, 3)).disjoint_union(&complete(5)).disjoint_union(&complete(5));
        let c = match pack(&z, &g, 4, 1, PackKind::Mixed, &MinorOptions::new(&b)).unwrap() {
            PackOutcome::Found(c) => c,
            other => panic!("{other:?}"),
        };
        verify_packing(&z, &g, &c).unwrap();
        let single = extract_single(&c, 2, 2).unwrap();
        verify_packing(&z, &g, &single).unwrap();
    }

    #[test]
    fn half_integral_triangles() {
        // K4: no two disjoint triangles, but two triangles sharing an edge
        let b = Budget::default();
        let z = [complete(3)];
        let g = complete(4);
        let opts = MinorOptions::new(&b);
        assert_eq!(pack_value(&z, &g, 1, PackKind::Single, &opts).unwrap().value, 1);
        let half = pack_value(&z, &g, 2, PackKind::Single, &opts).unwrap();
        verify_packing(&z, &g, &half.certificate).unwrap();
        assert!(half.value >= 2);
    }
}
