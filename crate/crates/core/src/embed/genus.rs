//! Exact Euler genus by branch and bound over signed rotation systems.
//!
//! Faces are built one corner at a time. A corner is a pair of consecutive
//! edge slots in some vertex rotation; fixing the rotation successor of a
//! slot and walking the face through it happen together, so every partial
//! assignment carries exact counts of closed faces and unused corners. With
//! `g` the minimum possible face length, an open face needs at least
//! `g - len` more corners and every later face at least `g`, which bounds the
//! final face count from above. Spanning-tree edges keep sign +1; the sign of
//! every other edge is chosen when a face first crosses it.

use serde::Serialize;

use super::{planar_embedding, trace, twist_merging, Embedding};
use crate::budget::Budget;
use crate::error::{Refusal, Result};
use crate::graph::Graph;
use crate::surface::Surface;

/// Blocks with more edges than this are refused unless planar.
pub const DEFAULT_MAX_BLOCK_EDGES: usize = 24;

#[derive(Clone, Copy, Debug)]
pub struct GenusOptions<'a> {
    pub budget: &'a Budget,
    pub max_block_edges: usize,
    /// Decompose into 2-connected blocks (otherwise only into components).
    pub use_blocks: bool,
}

impl<'a> GenusOptions<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        GenusOptions { budget, max_block_edges: DEFAULT_MAX_BLOCK_EDGES, use_blocks: true }
    }
}

/// Euler genus, orientable genus (handles) and non-orientable genus
/// (crosscaps) of a graph, with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct GenusResult {
    pub eg: usize,
    pub orientable_genus: usize,
    pub nonorientable_genus: usize,
    /// Realizes `eg`.
    pub witness: Embedding,
    /// Orientable, realizes `2 * orientable_genus`.
    #[serde(skip)]
    pub orientable_witness: Embedding,
    /// Non-orientable, realizes `nonorientable_genus`; `None` for forests,
    /// which have no non-orientable signed rotation system.
    #[serde(skip)]
    pub nonorientable_witness: Option<Embedding>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    Orientable,
    NonOrientable,
    Any,
}

const NONE: usize = usize::MAX;

enum Undo {
    Succ(usize),
    Pred(usize),
    Other(usize, usize),
    Flen(usize, usize),
    Used(usize),
    Sign(usize),
}

struct Search<'b> {
    slots: usize,
    vtx: Vec<usize>,
    nbr: Vec<usize>,
    base: Vec<usize>,
    deg: Vec<usize>,
    rev: Vec<usize>,
    edge: Vec<usize>,
    succ: Vec<usize>,
    pred: Vec<usize>,
    // at fragment endpoints: the other endpoint and the fragment length
    other: Vec<usize>,
    flen: Vec<usize>,
    used: Vec<bool>,
    used_count: usize,
    sign: Vec<i8>,
    undecided: usize,
    negative: usize,
    faces_done: usize,
    f_needed: i64,
    girth: usize,
    mode: Mode,
    start: usize,
    cur_len: usize,
    trail: Vec<Undo>,
    budget: &'b Budget,
}

/// Smallest possible face length of an embedding of a connected graph.
fn min_face_length(g: &Graph) -> usize {
    if g.m() <= 1 {
        return 2 * g.m();
    }
    if g.min_degree() >= 2 {
        g.girth().unwrap_or(3)
    } else {
        3
    }
}

impl<'b> Search<'b> {
    fn new(g: &Graph, target_eg: usize, mode: Mode, budget: &'b Budget) -> Self {
        let n = g.n();
        let mut base = vec![0; n + 1];
        for v in 0..n {
            base[v + 1] = base[v] + g.degree(v);
        }
        let slots = base[n];
        let mut vtx = vec![0; slots];
        let mut nbr = vec![0; slots];
        let mut rev = vec![0; slots];
        let mut edge = vec![0; slots];
        let edges = g.edges();
        for v in 0..n {
            for (i, &w) in g.neighbors(v).iter().enumerate() {
                let s = base[v] + i;
                vtx[s] = v;
                nbr[s] = w;
                rev[s] = base[w] + g.neighbors(w).binary_search(&v).unwrap();
                edge[s] = edges.binary_search(&(v.min(w), v.max(w))).unwrap();
            }
        }
        // BFS spanning tree edges keep sign +1
        let mut sign = vec![0i8; edges.len()];
        let mut seen = vec![false; n];
        if n > 0 {
            seen[0] = true;
            let mut queue = std::collections::VecDeque::from([0]);
            while let Some(x) = queue.pop_front() {
                for s in base[x]..base[x + 1] {
                    let y = nbr[s];
                    if !seen[y] {
                        seen[y] = true;
                        sign[edge[s]] = 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        if mode == Mode::Orientable {
            sign.iter_mut().for_each(|x| *x = 1);
        }
        let undecided = sign.iter().filter(|&&x| x == 0).count();
        Search {
            slots,
            vtx,
            nbr,
            deg: (0..n).map(|v| g.degree(v)).collect(),
            base,
            rev,
            edge,
            succ: vec![NONE; slots],
            pred: vec![NONE; slots],
            other: (0..slots).collect(),
            flen: vec![1; slots],
            used: vec![false; slots],
            used_count: 0,
            sign,
            undecided,
            negative: 0,
            faces_done: 0,
            f_needed: 2 - target_eg as i64 - n as i64 + g.m() as i64,
            girth: min_face_length(g).max(1),
            mode,
            start: 0,
            cur_len: 0,
            trail: Vec::new(),
            budget,
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Succ(a) => self.succ[a] = NONE,
                Undo::Pred(b) => self.pred[b] = NONE,
                Undo::Other(x, old) => self.other[x] = old,
                Undo::Flen(x, old) => self.flen[x] = old,
                Undo::Used(a) => {
                    self.used[a] = false;
                    self.used_count -= 1;
                }
                Undo::Sign(e) => {
                    if self.sign[e] < 0 {
                        self.negative -= 1;
                    }
                    self.sign[e] = 0;
                    self.undecided += 1;
                }
            }
        }
    }

    fn can_link(&self, a: usize, b: usize) -> bool {
        self.other[a] != b || self.flen[a] == self.deg[self.vtx[a]]
    }

    fn link(&mut self, a: usize, b: usize) {
        let head = self.other[a];
        let tail = self.other[b];
        self.succ[a] = b;
        self.pred[b] = a;
        self.trail.push(Undo::Succ(a));
        self.trail.push(Undo::Pred(b));
        if head != b {
            let len = self.flen[a] + self.flen[b];
            for (x, val) in [(head, tail), (tail, head)] {
                self.trail.push(Undo::Other(x, self.other[x]));
                self.other[x] = val;
                self.trail.push(Undo::Flen(x, self.flen[x]));
                self.flen[x] = len;
            }
        }
    }

    fn use_corner(&mut self, a: usize) {
        self.used[a] = true;
        self.used_count += 1;
        self.trail.push(Undo::Used(a));
    }

    fn bound_ok(&self) -> bool {
        let unused = self.slots - self.used_count;
        let need = self.girth.saturating_sub(self.cur_len);
        if unused < need {
            return false;
        }
        let possible = self.faces_done + 1 + (unused - need) / self.girth;
        possible as i64 >= self.f_needed
    }

    fn open_face(&mut self) -> std::result::Result<bool, Refusal> {
        if self.used_count == self.slots {
            if (self.faces_done as i64) < self.f_needed {
                return Ok(false);
            }
            return Ok(self.mode != Mode::NonOrientable || self.negative > 0);
        }
        let a = (0..self.slots)
            .find(|&a| !self.used[a] && self.succ[a] != NONE)
            .or_else(|| (0..self.slots).find(|&a| !self.used[a]))
            .unwrap();
        self.start = a;
        self.cur_len = 0;
        self.arrive(a, 1, true)
    }

    /// Arrived at the vertex of slot `sa` through that slot, orientation `s`.
    fn arrive(&mut self, sa: usize, s: i8, fresh: bool) -> std::result::Result<bool, Refusal> {
        if !fresh && s == 1 && sa == self.start {
            self.faces_done += 1;
            let saved = (self.start, self.cur_len);
            if self.open_face()? {
                return Ok(true);
            }
            self.faces_done -= 1;
            (self.start, self.cur_len) = saved;
            return Ok(false);
        }
        self.budget.tick()?;
        if !self.bound_ok() {
            return Ok(false);
        }
        let v = self.vtx[sa];
        let slots_of_v = self.base[v]..self.base[v] + self.deg[v];
        if s == 1 {
            if self.used[sa] {
                return Ok(false);
            }
            if self.succ[sa] != NONE {
                return self.take_corner(sa, None, self.succ[sa], s);
            }
            for b in slots_of_v {
                if self.pred[b] == NONE && self.can_link(sa, b) && self.take_corner(sa, Some((sa, b)), b, s)? {
                    return Ok(true);
                }
            }
        } else {
            let c = self.pred[sa];
            if c != NONE {
                if self.used[c] {
                    return Ok(false);
                }
                return self.take_corner(c, None, c, s);
            }
            for c in slots_of_v {
                if self.succ[c] == NONE && self.can_link(c, sa) && self.take_corner(c, Some((c, sa)), c, s)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Use corner `corner` (optionally creating link `new_link`) and leave
    /// through slot `out`.
    fn take_corner(&mut self, corner: usize, new_link: Option<(usize, usize)>, out: usize, s: i8) -> std::result::Result<bool, Refusal> {
        let mark = self.trail.len();
        if let Some((a, b)) = new_link {
            self.link(a, b);
        }
        self.use_corner(corner);
        self.cur_len += 1;
        if self.leave(out, s)? {
            return Ok(true);
        }
        self.cur_len -= 1;
        self.undo_to(mark);
        Ok(false)
    }

    fn leave(&mut self, out: usize, s: i8) -> std::result::Result<bool, Refusal> {
        let e = self.edge[out];
        let t = self.rev[out];
        if self.sign[e] != 0 {
            return self.arrive(t, s * self.sign[e], false);
        }
        for sg in [1i8, -1] {
            let mark = self.trail.len();
            self.sign[e] = sg;
            self.undecided -= 1;
            if sg < 0 {
                self.negative += 1;
            }
            self.trail.push(Undo::Sign(e));
            let dead = self.mode == Mode::NonOrientable && self.undecided == 0 && self.negative == 0;
            if !dead && self.arrive(t, s * sg, false)? {
                return Ok(true);
            }
            self.undo_to(mark);
        }
        Ok(false)
    }

    fn run(mut self) -> std::result::Result<Option<Embedding>, Refusal> {
        if self.slots == 0 {
            return Ok(Some(Embedding::orientable(vec![Vec::new(); self.deg.len()])));
        }
        if !self.open_face()? {
            return Ok(None);
        }
        let n = self.deg.len();
        let mut rotation = vec![Vec::new(); n];
        for (v, rot) in rotation.iter_mut().enumerate() {
            let first = self.base[v];
            let mut s = first;
            for _ in 0..self.deg[v] {
                rot.push(self.nbr[s]);
                s = self.succ[s];
            }
            debug_assert_eq!(s, first);
        }
        let mut emb = Embedding::orientable(rotation);
        for s in 0..self.slots {
            if self.sign[self.edge[s]] < 0 {
                emb.set_sign(self.vtx[s], self.nbr[s], -1);
            }
        }
        Ok(Some(emb))
    }
}

/// Search a connected graph for an embedding of Euler genus at most `t`.
fn search(g: &Graph, t: usize, mode: Mode, budget: &Budget) -> std::result::Result<Option<Embedding>, Refusal> {
    Search::new(g, t, mode, budget).run()
}

struct BlockProfile {
    eg: usize,
    gamma: usize,
    ngamma: Option<usize>,
    eg_wit: Embedding,
    or_wit: Embedding,
    no_wit: Option<Embedding>,
}

fn has_cycle(g: &Graph) -> bool {
    g.m() + g.components().len() > g.n()
}

fn profile_connected(h: &Graph, opts: &GenusOptions) -> Result<BlockProfile> {
    if let Some(p) = planar_embedding(h) {
        let no = if has_cycle(h) { twist_merging(h, &p) } else { None };
        return Ok(BlockProfile { eg: 0, gamma: 0, ngamma: no.as_ref().map(|_| 1), eg_wit: p.clone(), or_wit: p, no_wit: no });
    }
    if h.m() > opts.max_block_edges {
        return Err(opts
            .budget
            .refusal(format!("non-planar block with {} edges exceeds the limit of {}", h.m(), opts.max_block_edges))
            .into());
    }
    let (n, m) = (h.n() as i64, h.m() as i64);
    let g = min_face_length(h) as i64;
    let lb = (2 - n + m - (2 * m) / g).max(1) as usize;
    let mut t = lb;
    let eg_wit = loop {
        if let Some(e) = search(h, t, Mode::Any, opts.budget)? {
            break e;
        }
        t += 1;
    };
    let tr = trace(h, &eg_wit)?;
    let eg = tr.euler_genus;
    let (gamma, or_wit) = if tr.orientable {
        (eg / 2, eg_wit.clone())
    } else {
        let mut t2 = eg + eg % 2;
        loop {
            if let Some(e) = search(h, t2, Mode::Orientable, opts.budget)? {
                break (t2 / 2, e);
            }
            t2 += 2;
        }
    };
    let (ngamma, no_wit) = if !tr.orientable {
        (eg, eg_wit.clone())
    } else if let Some(e) = search(h, eg, Mode::NonOrientable, opts.budget)? {
        (eg, e)
    } else {
        match twist_merging(h, &or_wit).filter(|e| trace(h, e).map(|t| t.euler_genus == eg + 1).unwrap_or(false)) {
            Some(e) => (eg + 1, e),
            None => (eg + 1, search(h, eg + 1, Mode::NonOrientable, opts.budget)?.expect("twisting raises Euler genus by one")),
        }
    };
    Ok(BlockProfile { eg, gamma, ngamma: Some(ngamma), eg_wit, or_wit, no_wit: Some(no_wit) })
}

fn assemble(n: usize, parts: &[(&[usize], &Embedding)]) -> Embedding {
    let mut emb = Embedding::orientable(vec![Vec::new(); n]);
    for (map, local) in parts {
        for (lv, rot) in local.rotation.iter().enumerate() {
            emb.rotation[map[lv]].extend(rot.iter().map(|&w| map[w]));
        }
        for &(a, b) in &local.twisted {
            emb.set_sign(map[a], map[b], -1);
        }
    }
    emb
}

/// Full genus profile; blocks (or components) are searched separately and
/// combined additively.
pub fn genus_profile(g: &Graph, opts: &GenusOptions) -> Result<GenusResult> {
    let pieces: Vec<Vec<usize>> = if opts.use_blocks {
        g.blocks()
            .into_iter()
            .map(|edges| {
                let mut vs: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            })
            .collect()
    } else {
        g.components().into_iter().filter(|c| c.len() > 1).collect()
    };
    let mut locals = Vec::new();
    for vs in &pieces {
        let (h, _) = g.induced(vs);
        // a block of a graph is induced except for chords belonging to other blocks, which cannot exist
        let h = h.without_labels();
        let p = profile_connected(&h, opts)?;
        locals.push((vs.clone(), p));
    }
    let eg = locals.iter().map(|(_, p)| p.eg).sum();
    let gamma = locals.iter().map(|(_, p)| p.gamma).sum();
    let best = locals
        .iter()
        .enumerate()
        .filter_map(|(i, (_, p))| p.ngamma.map(|k| (k - p.eg, i)))
        .min();
    let n = g.n();
    let eg_parts: Vec<(&[usize], &Embedding)> = locals.iter().map(|(vs, p)| (vs.as_slice(), &p.eg_wit)).collect();
    let or_parts: Vec<(&[usize], &Embedding)> = locals.iter().map(|(vs, p)| (vs.as_slice(), &p.or_wit)).collect();
    let witness = assemble(n, &eg_parts);
    let orientable_witness = assemble(n, &or_parts);
    let (ngamma, nonorientable_witness) = match best {
        Some((diff, i)) => {
            let mut parts = eg_parts.clone();
            parts[i].1 = locals[i].1.no_wit.as_ref().unwrap();
            (eg + diff, Some(assemble(n, &parts)))
        }
        None => (1, None),
    };
    Ok(GenusResult {
        eg,
        orientable_genus: gamma,
        nonorientable_genus: ngamma,
        witness,
        orientable_witness,
        nonorientable_witness,
    })
}

pub fn euler_genus(g: &Graph, budget: &Budget) -> Result<GenusResult> {
    genus_profile(g, &GenusOptions::new(budget))
}

/// Decide whether `g` embeds in `s`; on success the witness realizes a
/// surface Σ′ ⪯ `s`.
pub fn embeds(g: &Graph, s: &Surface, opts: &GenusOptions) -> Result<Option<Embedding>> {
    let (h, c) = match *s {
        Surface::Empty => {
            return Ok(if g.n() == 0 { Some(Embedding::orientable(Vec::new())) } else { None });
        }
        Surface::Standard { h, c } => (h, c),
    };
    if g.n() == 0 {
        return Ok(Some(Embedding::orientable(Vec::new())));
    }
    let p = genus_profile(g, opts)?;
    if c == 0 {
        return Ok((p.orientable_genus <= h).then_some(p.orientable_witness));
    }
    let k = 2 * h + c;
    if p.nonorientable_genus <= k {
        return Ok(Some(p.nonorientable_witness.unwrap_or(p.orientable_witness)));
    }
    // an orientable embedding also fits when Σ(γ,0) ⪯ s
    Ok((2 * p.orientable_genus < k).then_some(p.orientable_witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::build(n, &e).unwrap()
    }

    fn kmn(m: usize, n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..m {
            for j in 0..n {
                e.push((i, m + j));
            }
        }
        Graph::build(m + n, &e).unwrap()
    }

    fn profile(g: &Graph) -> GenusResult {
        let b = Budget::unlimited();
        let p = euler_genus(g, &b).unwrap();
        assert_eq!(trace(g, &p.witness).unwrap().euler_genus, p.eg);
        let o = trace(g, &p.orientable_witness).unwrap();
        assert!(o.orientable);
        assert_eq!(o.euler_genus, 2 * p.orientable_genus);
        if let Some(w) = &p.nonorientable_witness {
            let t = trace(g, w).unwrap();
            assert!(!t.orientable);
            assert_eq!(t.euler_genus, p.nonorientable_genus);
        }
        p
    }

    #[test]
    fn k5_k6_k33() {
        for (g, eg, gamma, ngamma) in [(complete(5), 1, 1, 1), (complete(6), 1, 1, 1), (kmn(3, 3), 1, 1, 1), (complete(4), 0, 0, 1)] {
            let p = profile(&g);
            assert_eq!((p.eg, p.orientable_genus, p.nonorientable_genus), (eg, gamma, ngamma));
        }
    }

    #[test]
    fn k5_plus_k33_is_additive() {
        let p = profile(&complete(5).disjoint_union(&kmn(3, 3)));
        assert_eq!((p.eg, p.orientable_genus, p.nonorientable_genus), (2, 2, 2));
    }

    #[test]
    fn embeds_examples() {
        let b = Budget::unlimited();
        let o = GenusOptions::new(&b);
        assert!(embeds(&complete(5), &Surface::PROJECTIVE_PLANE, &o).unwrap().is_some());
        assert!(embeds(&complete(5), &Surface::TORUS, &o).unwrap().is_some());
        assert!(embeds(&complete(5).copies(2), &Surface::TORUS, &o).unwrap().is_none());
        assert!(embeds(&Graph::empty(0), &Surface::Empty, &o).unwrap().is_some());
        assert!(embeds(&Graph::empty(1), &Surface::Empty, &o).unwrap().is_none());
    }

    #[test]
    fn refuses_large_nonplanar_block() {
        let b = Budget::unlimited();
        let o = GenusOptions::new(&b);
        assert!(matches!(euler_genus(&complete(8), &b), Err(crate::error::Error::Refused(_))));
        // planar blocks are never refused
        let grid_edges: Vec<(usize, usize)> = (0..30).flat_map(|i| {
            let mut v = Vec::new();
            if i % 6 != 5 { v.push((i, i + 1)); }
            if i + 6 < 30 { v.push((i, i + 6)); }
            v
        }).collect();
        let grid = Graph::build(30, &grid_edges).unwrap();
        assert_eq!(genus_profile(&grid, &o).unwrap().eg, 0);
    }
}
