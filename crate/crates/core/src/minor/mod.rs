//! Minor containment with extractable models, and the packing, covering and
//! Erdős–Pósa computations built on it.
//!
//! Every search answers in one of three ways: a model (checked by the
//! independent verifier before it is returned), a proof of absence, or a
//! [`Refusal`](crate::Refusal) when the node budget runs out or no complete
//! method applies.

mod cover;
mod dense;
mod ep;
mod exact;
mod expansion;
mod heuristic;
mod pack;
mod pieces;
pub mod verify;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::embed::{genus_profile, kuratowski_subgraph_with_order, planar, GenusOptions, GenusResult};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::find_isomorphism;
use crate::surface::Surface;

pub use cover::cover;
pub use dense::{dense_clique_minor, DenseOutcome};
pub use ep::{ep_parameter, EpResult};
pub use exact::{exact_minor, MAX_EXACT_VERTICES};
pub use expansion::minimize_host;
pub use pack::{extract_single, pack, pack_value, PackOutcome, PackValue};
pub use verify::{verify_cover, verify_expansion, verify_model, verify_packing};

/// `branch[p]` is the host vertex set of pattern vertex `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinorModel {
    pub branch: Vec<Vec<usize>>,
}

impl MinorModel {
    pub fn identity(n: usize) -> MinorModel {
        MinorModel { branch: (0..n).map(|v| vec![v]).collect() }
    }

    /// All host vertices used, sorted.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.branch.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs
    }

    /// Rename host vertices through `map`.
    pub fn mapped(&self, map: &[usize]) -> MinorModel {
        MinorModel { branch: self.branch.iter().map(|s| s.iter().map(|&x| map[x]).collect()).collect() }
    }

    fn normalized(mut self) -> MinorModel {
        for s in &mut self.branch {
            s.sort_unstable();
            s.dedup();
        }
        self
    }
}

/// A minor-minimal host: `vertices` and `edges` form a subgraph of the host
/// in which every vertex outside `t` has degree two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub t: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackKind {
    Single,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackedHost {
    /// Index into the antichain.
    pub pattern: usize,
    pub model: MinorModel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingCert {
    pub hosts: Vec<PackedHost>,
    /// 1 for integral, 2 for half-integral packings.
    pub multiplicity: u8,
    pub kind: PackKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverCert {
    pub s: Vec<usize>,
    /// graph6 of each antichain member.
    pub checked_against: Vec<String>,
    /// One absence proof per member for `G − S`.
    pub attestation: Vec<AbsenceProof>,
}

/// Why a pattern is not a minor of a host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "proof", rename_all = "snake_case")]
pub enum AbsenceProof {
    /// Too few vertices or edges.
    Counting { reason: String },
    /// Non-planar pattern, planar host.
    Planarity,
    /// The pattern does not embed in a surface the host embeds in.
    Surface { host_surface: Surface, pattern_orientable_genus: usize, pattern_nonorientable_genus: usize },
    /// Pattern 2- or 3-connected and absent from every block or
    /// 3-connected piece of the host.
    Pieces { pieces: usize },
    /// K3,3 pattern; every 3-connected piece of the host is planar or K5.
    Hall { pieces: usize },
    /// No assignment of pattern components to host components works.
    Components { host_components: usize },
    /// Exhaustive search.
    Exhaustive { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum MinorAnswer {
    Found(MinorModel),
    Absent(AbsenceProof),
}

impl MinorAnswer {
    pub fn model(self) -> Option<MinorModel> {
        match self {
            MinorAnswer::Found(m) => Some(m),
            MinorAnswer::Absent(_) => None,
        }
    }
}

/// Knobs for [`minor_search`].
#[derive(Clone, Debug)]
pub struct MinorOptions<'a> {
    pub budget: &'a Budget,
    /// Candidate models tried first; invalid ones are ignored.
    pub hints: Vec<MinorModel>,
    /// A surface the host is known to embed in.
    pub host_surface: Option<Surface>,
    /// Hosts up to this order are searched exhaustively.
    pub exact_limit: usize,
    /// Restarts of the routing heuristic.
    pub restarts: usize,
    pub seed: u64,
}

impl<'a> MinorOptions<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        MinorOptions { budget, hints: Vec::new(), host_surface: None, exact_limit: 12, restarts: 12, seed: 0x5eed }
    }

    fn child(&self) -> MinorOptions<'a> {
        MinorOptions { hints: Vec::new(), ..self.clone() }
    }
}

/// `Some(model)` if `h` is a minor of `g`, `None` if absence is proven.
pub fn is_minor(h: &Graph, g: &Graph, budget: &Budget) -> Result<Option<MinorModel>> {
    Ok(minor_search(h, g, &MinorOptions::new(budget))?.model())
}

/// Full decision with the absence proof.
pub fn minor_search(h: &Graph, g: &Graph, opts: &MinorOptions) -> Result<MinorAnswer> {
    let ans = search(h, g, opts, true)?;
    if let MinorAnswer::Found(m) = &ans {
        verify_model(h, g, m).map_err(|e| Error::Certificate(format!("searcher produced an invalid model: {e}")))?;
    }
    Ok(ans)
}

fn counting(reason: String) -> MinorAnswer {
    MinorAnswer::Absent(AbsenceProof::Counting { reason })
}

pub(crate) fn is_complete(h: &Graph) -> bool {
    h.m() == h.n() * h.n().saturating_sub(1) / 2
}

fn is_k33(h: &Graph) -> bool {
    h.n() == 6 && h.m() == 9 && (0..6).all(|v| h.degree(v) == 3) && {
        // bipartite with sides of three
        let side: Vec<bool> = (0..6).map(|v| h.has_edge(0, v)).collect();
        (0..6).all(|u| h.neighbors(u).iter().all(|&w| side[u] != side[w]))
    }
}

/// Vertex connectivity is at least `k` (for small `k`).
pub(crate) fn is_k_connected(h: &Graph, k: usize) -> bool {
    if h.n() <= k {
        return false;
    }
    match k {
        0 => true,
        1 => h.is_connected(),
        2 => h.is_connected() && h.blocks().len() == 1 && h.n() >= 3,
        _ => (0..h.n()).all(|v| is_k_connected(&h.delete_vertex(v).unwrap(), k - 1)),
    }
}

/// `(γ, ~γ)` when every non-planar block is small enough for the genus engine.
fn cheap_profile(g: &Graph, budget: &Budget) -> Result<Option<GenusResult>> {
    let big = g.blocks().iter().any(|b| {
        b.len() > crate::embed::DEFAULT_MAX_BLOCK_EDGES && {
            let mut vs: Vec<usize> = b.iter().flat_map(|&(u, v)| [u, v]).collect();
            vs.sort_unstable();
            vs.dedup();
            !planar(&g.induced(&vs).0)
        }
    });
    if big {
        return Ok(None);
    }
    genus_profile(g, &GenusOptions::new(budget)).map(Some)
}

/// The pattern with this genus profile embeds in `s`.
fn profile_embeds(p: &GenusResult, s: &Surface) -> bool {
    match *s {
        Surface::Empty => false,
        Surface::Standard { h, c: 0 } => p.orientable_genus <= h,
        Surface::Standard { h, c } => p.nonorientable_genus <= 2 * h + c,
    }
}

/// Edge orders handed to the Kuratowski extractor: lexicographic, reversed,
/// then shuffles.
fn edge_orders(g: &Graph, count: usize, seed: u64) -> Vec<Vec<(usize, usize)>> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let e = g.edges();
    let mut out = vec![e.clone(), e.iter().rev().copied().collect()];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let mut x = e.clone();
        x.shuffle(&mut rng);
        out.push(x);
    }
    out
}

/// Turn a subdivision of `h` (edge list inside `g`) into a minor model:
/// each subdivided path joins the branch set of the end it was traced from.
pub(crate) fn model_from_subdivision(h: &Graph, g: &Graph, edges: &[(usize, usize)], budget: &Budget) -> Result<Option<MinorModel>> {
    let sub = Graph::build(g.n(), edges)?;
    let branch: Vec<usize> = (0..g.n()).filter(|&v| sub.degree(v) >= 3 || (sub.degree(v) == 1)).collect();
    let index: std::collections::HashMap<usize, usize> = branch.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut owner = vec![usize::MAX; g.n()];
    let mut reduced = Vec::new();
    for (i, &b) in branch.iter().enumerate() {
        owner[b] = i;
    }
    for (i, &b) in branch.iter().enumerate() {
        for &first in sub.neighbors(b) {
            let (mut prev, mut cur) = (b, first);
            let mut inner = Vec::new();
            while !index.contains_key(&cur) {
                inner.push(cur);
                let next = sub.neighbors(cur).iter().copied().find(|&w| w != prev);
                match next {
                    Some(nx) => {
                        prev = cur;
                        cur = nx;
                    }
                    None => return Ok(None),
                }
            }
            let j = index[&cur];
            if i < j {
                reduced.push((i, j));
                for x in inner {
                    owner[x] = i;
                }
            }
        }
    }
    reduced.sort_unstable();
    reduced.dedup();
    let rg = Graph::build(branch.len(), &reduced)?;
    let Some(f) = find_isomorphism(h, &rg, budget)? else { return Ok(None) };
    let mut sets = vec![Vec::new(); branch.len()];
    for x in 0..g.n() {
        if owner[x] != usize::MAX {
            sets[owner[x]].push(x);
        }
    }
    Ok(Some(MinorModel { branch: (0..h.n()).map(|p| sets[f[p]].clone()).collect() }))
}

/// Disconnected host: place each pattern component in one host component.
fn by_components(h: &Graph, g: &Graph, opts: &MinorOptions) -> Result<Option<MinorAnswer>> {
    let gc = g.components();
    if gc.len() < 2 {
        return Ok(None);
    }
    let mut hc = h.components();
    hc.sort_by_key(|c| std::cmp::Reverse(c.len()));
    if hc.len() > 16 {
        return Ok(None);
    }
    let hosts: Vec<(Graph, Vec<usize>)> = gc.iter().map(|c| g.induced(c)).collect();
    let mut memo: BTreeMap<(usize, u32), Option<MinorModel>> = BTreeMap::new();
    let mut refusal = None;
    let mut try_place = |j: usize, mask: u32| -> Result<Option<MinorModel>> {
        if let Some(m) = memo.get(&(j, mask)) {
            return Ok(m.clone());
        }
        let vs: Vec<usize> = (0..hc.len()).filter(|&i| mask >> i & 1 == 1).flat_map(|i| hc[i].iter().copied()).collect();
        let (part, hmap) = h.induced(&vs);
        let (host, gmap) = &hosts[j];
        let found = match search(&part, host, &opts.child(), false) {
            Ok(MinorAnswer::Found(m)) => {
                let mut branch = vec![Vec::new(); h.n()];
                for (i, set) in m.branch.iter().enumerate() {
                    branch[hmap[i]] = set.iter().map(|&x| gmap[x]).collect();
                }
                Some(MinorModel { branch })
            }
            Ok(MinorAnswer::Absent(_)) => None,
            Err(Error::Refused(r)) => {
                refusal = Some(r);
                None
            }
            Err(e) => return Err(e),
        };
        memo.insert((j, mask), found.clone());
        Ok(found)
    };
    // masks[j]: pattern components placed in host component j so far
    fn rec(
        i: usize,
        n_parts: usize,
        masks: &mut Vec<u32>,
        place: &mut dyn FnMut(usize, u32) -> Result<Option<MinorModel>>,
    ) -> Result<Option<Vec<Option<MinorModel>>>> {
        if i == n_parts {
            let mut out = Vec::new();
            for (j, &mask) in masks.iter().enumerate() {
                out.push(if mask == 0 { None } else { Some(place(j, mask)?.expect("checked when placed")) });
            }
            return Ok(Some(out));
        }
        for j in 0..masks.len() {
            let mask = masks[j] | 1 << i;
            if place(j, mask)?.is_some() {
                masks[j] = mask;
                if let Some(r) = rec(i + 1, n_parts, masks, place)? {
                    return Ok(Some(r));
                }
                masks[j] &= !(1 << i);
            }
        }
        Ok(None)
    }
    let mut masks = vec![0u32; hosts.len()];
    let placed = rec(0, hc.len(), &mut masks, &mut try_place)?;
    if let Some(parts) = placed {
        let mut branch = vec![Vec::new(); h.n()];
        for m in parts.into_iter().flatten() {
            for (p, set) in m.branch.into_iter().enumerate() {
                if !set.is_empty() {
                    branch[p] = set;
                }
            }
        }
        return Ok(Some(MinorAnswer::Found(MinorModel { branch }.normalized())));
    }
    match refusal {
        Some(r) => Err(r.into()),
        None => Ok(Some(MinorAnswer::Absent(AbsenceProof::Components { host_components: hosts.len() }))),
    }
}

fn search(h: &Graph, g: &Graph, opts: &MinorOptions, top: bool) -> Result<MinorAnswer> {
    let budget = opts.budget;
    budget.tick()?;
    if h.n() == 0 {
        return Ok(MinorAnswer::Found(MinorModel { branch: Vec::new() }));
    }
    if h.n() > g.n() {
        return Ok(counting(format!("pattern has {} vertices, host {}", h.n(), g.n())));
    }
    if h.m() > g.m() {
        return Ok(counting(format!("pattern has {} edges, host {}", h.m(), g.m())));
    }
    for hint in &opts.hints {
        if verify_model(h, g, hint).is_ok() {
            return Ok(MinorAnswer::Found(hint.clone().normalized()));
        }
    }
    if h.n() == g.n() {
        // no contraction is possible: minor means spanning subgraph
        let found = if h.m() == g.m() {
            find_isomorphism(h, g, budget)?.map(|f| MinorModel { branch: f.iter().map(|&x| vec![x]).collect() })
        } else if g.n() <= MAX_EXACT_VERTICES {
            exact::spanning_model(h, g, budget)?
        } else {
            return Err(budget.refusal("spanning-subgraph test needs at most 64 vertices").into());
        };
        return Ok(match found {
            Some(m) => MinorAnswer::Found(m),
            None => MinorAnswer::Absent(AbsenceProof::Exhaustive { nodes: budget.used() }),
        });
    }
    let h_planar = planar(h);
    if !h_planar && planar(g) {
        return Ok(MinorAnswer::Absent(AbsenceProof::Planarity));
    }
    if !h_planar {
        if let Some(hp) = cheap_profile(h, budget)? {
            let mut host_surfaces: Vec<Surface> = opts.host_surface.into_iter().collect();
            if top && opts.host_surface.is_none() && g.n() <= 40 {
                if let Some(gp) = cheap_profile(g, budget)? {
                    host_surfaces.push(Surface::orientable(gp.orientable_genus));
                    host_surfaces.push(Surface::nonorientable(gp.nonorientable_genus.max(1)));
                }
            }
            for s in host_surfaces {
                if !profile_embeds(&hp, &s) {
                    return Ok(MinorAnswer::Absent(AbsenceProof::Surface {
                        host_surface: s,
                        pattern_orientable_genus: hp.orientable_genus,
                        pattern_nonorientable_genus: hp.nonorientable_genus,
                    }));
                }
            }
        }
    }
    if let Some(ans) = by_components(h, g, opts)? {
        return Ok(ans);
    }
    if is_complete(h) && h.n() >= 3 {
        if let DenseOutcome::Model(m) = dense_clique_minor(g, h.n()) {
            return Ok(MinorAnswer::Found(m));
        }
    }
    if let Some(ans) = pieces::by_pieces(h, g, opts)? {
        return Ok(ans);
    }
    if !h_planar && (h.n() == 5 || h.n() == 6) && (is_complete(h) || is_k33(h)) {
        for order in edge_orders(g, 6, opts.seed) {
            budget.charge(g.m() as u64)?;
            if let Some(ev) = kuratowski_subgraph_with_order(g, &order) {
                if let Some(m) = model_from_subdivision(h, g, &ev.edges, budget)? {
                    return Ok(MinorAnswer::Found(m));
                }
            }
        }
    }
    if let Some(m) = heuristic::label_repair(h, g, budget)? {
        return Ok(MinorAnswer::Found(m));
    }
    if let Some(m) = heuristic::route_by_coordinates(h, g, 4, opts.seed, budget)? {
        return Ok(MinorAnswer::Found(m));
    }
    let small = g.n() <= opts.exact_limit.min(MAX_EXACT_VERTICES);
    let restarts = if small { opts.restarts.min(2) } else { opts.restarts };
    if let Some(m) = heuristic::route(h, g, restarts, opts.seed, budget)? {
        return Ok(MinorAnswer::Found(m));
    }
    if small {
        let before = budget.used();
        return Ok(match exact_minor(h, g, budget)? {
            Some(m) => MinorAnswer::Found(m),
            None => MinorAnswer::Absent(AbsenceProof::Exhaustive { nodes: budget.used() - before }),
        });
    }
    Err(budget
        .refusal(format!(
            "no model found heuristically and the host ({} vertices) exceeds the exhaustive limit {}",
            g.n(),
            opts.exact_limit
        ))
        .into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete, complete_bipartite, cycle, generate, petersen, FamilySpec};

    #[test]
    fn basic_answers() {
        let b = Budget::default();
        assert!(is_minor(&complete(5), &complete_bipartite(3, 3), &b).unwrap().is_none());
        assert!(is_minor(&complete(4), &complete(5), &b).unwrap().is_some());
        assert!(is_minor(&complete(5), &petersen(), &b).unwrap().is_some());
        assert!(is_minor(&complete_bipartite(3, 3), &petersen(), &b).unwrap().is_some());
        assert!(is_minor(&cycle(4), &cycle(7), &b).unwrap().is_some());
        assert!(is_minor(&complete(3), &crate::family::path(9), &b).unwrap().is_none());
        let v1 = generate(&FamilySpec::ShallowVortexGrid { k: 1 }).unwrap().graph;
        assert!(is_minor(&complete(4), &v1, &b).unwrap().is_some());
    }

    #[test]
    fn v2_in_v6() {
        let b = Budget::new(10_000_000);
        let v2 = generate(&FamilySpec::ShallowVortexGrid { k: 2 }).unwrap().graph;
        let v6 = generate(&FamilySpec::ShallowVortexGrid { k: 6 }).unwrap().graph;
        assert!(is_minor(&v2, &v6, &b).unwrap().is_some());
    }

    #[test]
    fn kuratowski_models_in_dyck_grids() {
        let b = Budget::default();
        for (h, c) in [(1, 0), (0, 1)] {
            let g = generate(&FamilySpec::DyckGrid { k: 2, h, c }).unwrap().graph;
            assert!(is_minor(&complete(5), &g, &b).unwrap().is_some());
            assert!(is_minor(&complete_bipartite(3, 3), &g, &b).unwrap().is_some());
        }
    }

    #[test]
    fn subdivision_to_model() {
        let b = Budget::default();
        let g = petersen();
        let ev = crate::embed::kuratowski_subgraph(&g).unwrap();
        let m = model_from_subdivision(&complete_bipartite(3, 3), &g, &ev.edges, &b).unwrap().unwrap();
        verify_model(&complete_bipartite(3, 3), &g, &m).unwrap();
    }
}
