//! Minimal separations of order at most three, Kuratowski-connectivity,
//! core components and the non-planar part of a graph.

use serde::{Deserialize, Serialize};

use crate::embed::{disk_embeddable, planar};
use crate::error::{Error, Result};
use crate::graph::{Graph, Separation};

/// Which sides of a separation (A, B) are (A∩B)-disk embeddable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiskSide {
    None,
    A,
    B,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalSeparationReport {
    pub separation: Separation,
    /// A component of G − (A∩B) inside A∖B seeing every separator vertex.
    pub c: Vec<usize>,
    /// Likewise inside B∖A.
    pub d: Vec<usize>,
    pub disk_side: DiskSide,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KcResult {
    pub kuratowski_connected: bool,
    pub violation: Option<MinimalSeparationReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoreStatus {
    Found(Vec<usize>),
    NoneFound(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaEntry {
    pub separation: Separation,
    /// The side that is not (X∩Y)-disk embeddable; `None` if both are.
    pub non_embeddable: Option<Side>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreResult {
    pub status: CoreStatus,
    pub sigma_trace: Vec<SigmaEntry>,
}

/// All k-subsets of `pool` for k in 0..=max, in lexicographic order.
fn subsets_up_to(pool: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::new(), 0usize)];
    for _ in 0..max {
        let mut next = Vec::new();
        for (s, start) in frontier {
            for i in start..pool.len() {
                let mut t: Vec<usize> = s.clone();
                t.push(pool[i]);
                out.push(t.clone());
                next.push((t, i + 1));
            }
        }
        frontier = next;
    }
    out
}

fn side_embeddable(g: &Graph, side: &[usize], sep: &[usize]) -> Result<bool> {
    let (h, map) = g.induced(side);
    let x: Vec<usize> = sep.iter().map(|&v| map.iter().position(|&w| w == v).unwrap()).collect();
    disk_embeddable(&h, &x)
}

fn disk_side(g: &Graph, s: &Separation) -> Result<DiskSide> {
    let sep = s.separator();
    let a = side_embeddable(g, &s.a, &sep)?;
    let b = side_embeddable(g, &s.b, &sep)?;
    Ok(match (a, b) {
        (true, true) => DiskSide::Both,
        (true, false) => DiskSide::A,
        (false, true) => DiskSide::B,
        (false, false) => DiskSide::None,
    })
}

fn removed_mask(n: usize, sep: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in sep {
        m[v] = true;
    }
    m
}

fn sorted_union(parts: &[&[usize]]) -> Vec<usize> {
    let mut v: Vec<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Every separation with separator `sep`: components of G − sep assigned to
/// sides, each unordered pair once with the lexicographically smaller side
/// first. Trivial separations are included when `with_trivial`.
fn separations_over(g: &Graph, sep: &[usize], with_trivial: bool) -> Vec<(Separation, Vec<Vec<usize>>, Vec<bool>)> {
    let comps = g.components_without(&removed_mask(g.n(), sep));
    let c = comps.len();
    let mut out = Vec::new();
    if c > 20 {
        return out;
    }
    for mask in 0u32..(1u32 << c) {
        let on_a: Vec<bool> = (0..c).map(|i| mask >> i & 1 == 1).collect();
        if !with_trivial && (on_a.iter().all(|&x| x) || on_a.iter().all(|&x| !x)) {
            continue;
        }
        let a_parts: Vec<&[usize]> = (0..c).filter(|&i| on_a[i]).map(|i| comps[i].as_slice()).chain([sep]).collect();
        let b_parts: Vec<&[usize]> = (0..c).filter(|&i| !on_a[i]).map(|i| comps[i].as_slice()).chain([sep]).collect();
        let (a, b) = (sorted_union(&a_parts), sorted_union(&b_parts));
        if a > b || (a == b && mask != 0) {
            continue;
        }
        out.push((Separation { a, b }, comps.clone(), on_a));
    }
    out
}

/// Every separation of order at most `max_order`, each unordered pair once.
pub fn separations(g: &Graph, max_order: usize, nontrivial_only: bool) -> Vec<Separation> {
    let all: Vec<usize> = (0..g.n()).collect();
    let mut out: Vec<Separation> = subsets_up_to(&all, max_order.min(g.n()))
        .into_iter()
        .flat_map(|sep| separations_over(g, &sep, !nontrivial_only).into_iter().map(|(s, _, _)| s))
        .filter(|s| !nontrivial_only || s.is_nontrivial())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Every minimal separation of order at most `max_order` (≤ 3), optionally
/// only those whose separator lies inside `within`.
pub fn minimal_separations(g: &Graph, max_order: usize, within: Option<&[usize]>) -> Result<Vec<MinimalSeparationReport>> {
    if max_order > 3 {
        return Err(Error::Params(format!("separation order {max_order} > 3")));
    }
    let pool: Vec<usize> = match within {
        Some(t) => {
            let mut t = t.to_vec();
            t.sort_unstable();
            t.dedup();
            if let Some(&v) = t.iter().find(|&&v| v >= g.n()) {
                return Err(Error::VertexOutOfRange { v, n: g.n() });
            }
            t
        }
        None => (0..g.n()).collect(),
    };
    let mut out = Vec::new();
    for sep in subsets_up_to(&pool, max_order.min(pool.len())) {
        let sees_all = |comp: &[usize]| sep.iter().all(|&s| g.neighbors(s).iter().any(|w| comp.contains(w)));
        for (s, comps, on_a) in separations_over(g, &sep, false) {
            let full_a = (0..comps.len()).find(|&i| on_a[i] && sees_all(&comps[i]));
            let full_b = (0..comps.len()).find(|&i| !on_a[i] && sees_all(&comps[i]));
            if let (Some(i), Some(j)) = (full_a, full_b) {
                let side = disk_side(g, &s)?;
                out.push(MinimalSeparationReport { separation: s, c: comps[i].clone(), d: comps[j].clone(), disk_side: side });
            }
        }
    }
    out.sort_by(|x, y| x.separation.cmp(&y.separation));
    Ok(out)
}

/// Every minimal separation of order ≤ 3 has a disk-embeddable side.
pub fn is_kuratowski_connected(g: &Graph) -> Result<KcResult> {
    let violation = minimal_separations(g, 3, None)?.into_iter().find(|r| r.disk_side == DiskSide::None);
    Ok(KcResult { kuratowski_connected: violation.is_none(), violation })
}

/// Core component of a non-trivial separation of order ≤ 3 of a connected,
/// non-planar, Kuratowski-connected graph: the intersection Φ of the
/// non-embeddable sides of all minimal separations with separator inside
/// A∩B, minus A∩B, when that is exactly one component of H − (A∩B).
pub fn core_component(h: &Graph, sep: &Separation) -> Result<CoreResult> {
    let sep = Separation::new(h, &sep.a, &sep.b)?;
    let s = sep.separator();
    if s.len() > 3 {
        return Err(Error::Precondition(format!("separation has order {} > 3", s.len())));
    }
    if !sep.is_nontrivial() {
        return Err(Error::Precondition("separation is trivial".into()));
    }
    if !h.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    if planar(h) {
        return Err(Error::Precondition("graph is planar".into()));
    }
    if let Some(v) = is_kuratowski_connected(h)?.violation {
        return Err(Error::Precondition(format!("graph is not Kuratowski-connected (violated by {:?})", v.separation)));
    }
    let family = minimal_separations(h, 3, Some(&s))?;
    let mut in_all = vec![true; h.n()];
    let mut trace = Vec::new();
    for r in family {
        let side = match r.disk_side {
            DiskSide::A => Some(Side::B),
            DiskSide::B => Some(Side::A),
            DiskSide::Both => None,
            DiskSide::None => unreachable!("graph is Kuratowski-connected"),
        };
        let mut mark = vec![false; h.n()];
        match side {
            Some(Side::A) => r.separation.a.iter().for_each(|&v| mark[v] = true),
            Some(Side::B) => r.separation.b.iter().for_each(|&v| mark[v] = true),
            None => {}
        }
        for v in 0..h.n() {
            in_all[v] &= mark[v];
        }
        trace.push(SigmaEntry { separation: r.separation, non_embeddable: side });
    }
    let phi: Vec<usize> = (0..h.n()).filter(|&v| in_all[v] && !s.contains(&v)).collect();
    let comps = h.components_without(&removed_mask(h.n(), &s));
    let status = if phi.is_empty() {
        CoreStatus::NoneFound(format!("the non-embeddable sides of {} separations have no common vertex outside the separator", trace.len()))
    } else if comps.contains(&phi) {
        CoreStatus::Found(phi)
    } else {
        CoreStatus::NoneFound(format!("Φ = {phi:?} is not a single component of H − {s:?}"))
    };
    Ok(CoreResult { status, sigma_trace: trace })
}

/// Induced subgraph on the union of the non-planar components.
pub fn npl(h: &Graph) -> Graph {
    let mut keep = Vec::new();
    for c in h.components() {
        let (sub, _) = h.induced(&c);
        if !planar(&sub) {
            keep.extend(c);
        }
    }
    keep.sort_unstable();
    h.induced(&keep).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete, complete_bipartite, graph_j, petersen};

    #[test]
    fn k5_has_no_small_separations() {
        assert!(minimal_separations(&complete(5), 3, None).unwrap().is_empty());
        assert!(is_kuratowski_connected(&complete(5)).unwrap().kuratowski_connected);
    }

    #[test]
    fn graph_j_is_not_kuratowski_connected() {
        let j = graph_j();
        let r = is_kuratowski_connected(&j).unwrap();
        assert!(!r.kuratowski_connected);
        let v = r.violation.unwrap();
        assert_eq!(v.separation.separator(), vec![0, 1]);
        assert_eq!(v.disk_side, DiskSide::None);
    }

    #[test]
    fn petersen_is_kuratowski_connected() {
        assert!(is_kuratowski_connected(&petersen()).unwrap().kuratowski_connected);
    }

    #[test]
    fn k33_color_class_separations() {
        let g = complete_bipartite(3, 3);
        let seps = minimal_separations(&g, 3, Some(&[0, 1, 2])).unwrap();
        // {3} | {4,5}, {4} | {3,5}, {5} | {3,4} over the class {0,1,2}
        assert_eq!(seps.len(), 3);
        assert!(seps.iter().all(|r| r.separation.separator() == vec![0, 1, 2]));
    }

    #[test]
    fn core_of_k5_with_pendant_triangle() {
        let g = Graph::build(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (0, 5), (0, 6), (5, 6)]).unwrap();
        let sep = Separation::new(&g, &[0, 1, 2, 3, 4], &[0, 5, 6]).unwrap();
        let r = core_component(&g, &sep).unwrap();
        assert_eq!(r.status, CoreStatus::Found(vec![1, 2, 3, 4]));
        let trivial = Separation::new(&g, &[0, 1, 2, 3, 4, 5, 6], &[0]).unwrap();
        assert!(matches!(core_component(&g, &trivial), Err(Error::Precondition(_))));
    }

    #[test]
    fn core_of_k33_over_a_color_class_is_not_found() {
        let g = complete_bipartite(3, 3);
        let sep = Separation::new(&g, &[0, 1, 2, 3], &[0, 1, 2, 4, 5]).unwrap();
        let r = core_component(&g, &sep).unwrap();
        assert!(matches!(r.status, CoreStatus::NoneFound(_)));
        assert_eq!(r.sigma_trace.len(), 3);
    }

    #[test]
    fn npl_examples() {
        let g = complete(5).disjoint_union(&crate::family::cycle(4));
        assert_eq!(npl(&g).n(), 5);
        assert_eq!(npl(&crate::family::cycle(5)).n(), 0);
        assert_eq!(npl(&complete(5).disjoint_union(&complete_bipartite(3, 3))).n(), 11);
    }
}
