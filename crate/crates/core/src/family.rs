//! Generators for the grid-like parametric graphs (annulus, handle, cross-cap
//! and Dyck grids, walls, Dyck walls, shallow-vortex grids), ring blowups and
//! a handful of named graphs, with canonical embeddings and substructure tags.
//!
//! Grid families use the vertex `v_j^i` (cycle `i`, track position `j`, both
//! 1-based) at index `(i-1)·L + (j-1)` where `L` is the cycle length, and
//! label it `"i,j"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::embed::{disk_embeddable, is_planar, planar_embedding, trace, Embedding, Planarity};
use crate::error::{Error, Result};
use crate::graph::{glue, BoundariedGraph, Graph};
use crate::graph6;

/// The seven graphs obtained from K6 by ΔY and YΔ exchanges, in graph6.
pub const PETERSEN_FAMILY: [&str; 7] = ["E~~w", "FF~~?", "F]~Hw", "GBZ~Co", "GFzf?w", "H@YnCpS", "I@QFCpSJ?"];

/// Index of the Petersen graph itself in [`PETERSEN_FAMILY`].
pub const PETERSEN_INDEX: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// The (4k, k)-cylindrical grid.
    AnnulusGrid { k: usize },
    /// Cartesian product of a cycle on `n` vertices and a path on `m`.
    CylGrid { n: usize, m: usize },
    /// `n` rows, `m` columns.
    Grid { n: usize, m: usize },
    HandleGrid { k: usize },
    CrosscapGrid { k: usize },
    DyckGrid { k: usize, h: usize, c: usize },
    Wall { k: usize },
    DyckWall { t: usize, h: usize, c: usize },
    ShallowVortexGrid { k: usize },
    /// `base` is a graph name or graph6 string; `cycle` lists its vertices in order.
    RingBlowup { base: String, cycle: Vec<usize> },
    /// Möbius ladder on `order` (even, ≥ 6) vertices.
    MobiusLadder { order: usize },
    Complete { n: usize },
    CompleteBipartite { m: usize, n: usize },
    PetersenFamily { index: usize },
    GraphJ,
}

/// Named vertex and edge sets of a generated graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    /// Cycles and paths are listed in traversal order.
    pub vertices: BTreeMap<String, Vec<usize>>,
    pub edges: BTreeMap<String, Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedGraph {
    pub graph: Graph,
    pub spec: FamilySpec,
    pub tags: Tags,
    pub canonical_embedding: Option<Embedding>,
    /// Parametric index below the range where the construction is intended
    /// (Dyck grids and walls with order < 3).
    pub degenerate: bool,
}

fn params(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Params(msg()))
    }
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        use FamilySpec::*;
        match self {
            AnnulusGrid { k } | HandleGrid { k } | CrosscapGrid { k } | ShallowVortexGrid { k } => params(*k >= 1, || "k must be at least 1".into()),
            CylGrid { n, m } => params(*n >= 3 && *m >= 1, || "cylindrical grid needs a cycle of length >= 3 and a path of >= 1 vertex".into()),
            Grid { n, m } => params(*n >= 1 && *m >= 1, || "grid needs n, m >= 1".into()),
            DyckGrid { k, c, .. } => params(*k >= 1 && *c <= 2, || format!("Dyck grid needs k >= 1 and c <= 2, got k={k}, c={c}")),
            DyckWall { t, c, .. } => params(*t >= 1 && *c <= 2, || format!("Dyck wall needs t >= 1 and c <= 2, got t={t}, c={c}")),
            Wall { k } => params(*k >= 3, || format!("wall needs k >= 3, got {k}")),
            MobiusLadder { order } => params(*order >= 6 && order % 2 == 0, || format!("Möbius ladder needs an even order >= 6, got {order}")),
            PetersenFamily { index } => params(*index < 7, || format!("Petersen family index {index} out of range 0..6")),
            RingBlowup { cycle, .. } => params(cycle.len() >= 3, || "ring blowup cycle needs at least 3 vertices".into()),
            Complete { .. } | CompleteBipartite { .. } | GraphJ => Ok(()),
        }
    }
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    Graph::build(n, &e).unwrap()
}

pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let e: Vec<_> = (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j))).collect();
    Graph::build(m + n, &e).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::build(n, &e).unwrap()
}

pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::build(n, &e).unwrap()
}

pub fn mobius_ladder(order: usize) -> Graph {
    let n = order / 2;
    let mut e: Vec<_> = (0..order).map(|i| (i, (i + 1) % order)).collect();
    e.extend((0..n).map(|i| (i, i + n)));
    Graph::build(order, &e).unwrap()
}

pub fn petersen() -> Graph {
    graph6::decode_str(PETERSEN_FAMILY[PETERSEN_INDEX]).unwrap()
}

/// K5 and K3,3 glued along an edge of each.
pub fn graph_j() -> Graph {
    let k5 = BoundariedGraph::new(complete(5), vec![0, 1]).unwrap();
    let k33 = BoundariedGraph::new(complete_bipartite(3, 3), vec![0, 3]).unwrap();
    glue(&k5, &k33).unwrap()
}

/// Resolve a graph name: `k<n>`, `k<m><n>` / `k<m>,<n>` (bipartite),
/// `c<n>`, `p<n>`, `m<2n>`, `petersen`, `wagner`, `j`, `pf<i>`, `v<k>`.
pub fn named(name: &str) -> Option<Graph> {
    let s = name.trim().to_ascii_lowercase();
    let num = |t: &str| t.parse::<usize>().ok();
    match s.as_str() {
        "petersen" => return Some(petersen()),
        "wagner" => return Some(mobius_ladder(8)),
        "j" | "graphj" => return Some(graph_j()),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("pf") {
        return num(rest).filter(|&i| i < 7).map(|i| graph6::decode_str(PETERSEN_FAMILY[i]).unwrap());
    }
    if let Some(rest) = s.strip_prefix('k') {
        if let Some((a, b)) = rest.split_once([',', '_']) {
            return Some(complete_bipartite(num(a)?, num(b)?));
        }
        if rest.len() == 2 && rest.bytes().all(|b| b.is_ascii_digit()) {
            return Some(complete_bipartite(num(&rest[..1])?, num(&rest[1..])?));
        }
        return num(rest).map(complete);
    }
    if let Some(rest) = s.strip_prefix('c') {
        return num(rest).filter(|&n| n >= 3).map(cycle);
    }
    if let Some(rest) = s.strip_prefix('p') {
        return num(rest).map(path);
    }
    if let Some(rest) = s.strip_prefix('m') {
        return num(rest).filter(|&n| n >= 6 && n % 2 == 0).map(mobius_ladder);
    }
    if let Some(rest) = s.strip_prefix('v') {
        return num(rest).filter(|&k| k >= 1).and_then(|k| generate(&FamilySpec::ShallowVortexGrid { k }).ok()).map(|g| g.graph);
    }
    None
}

/// A graph name or graph6 string.
pub fn resolve_graph(s: &str) -> Result<Graph> {
    match named(s) {
        Some(g) => Ok(g),
        None => graph6::decode_str(s.trim()),
    }
}

/// `cyc` is a cycle of `g` and `g` plus an apex on `cyc` is planar.
pub fn is_facial(g: &Graph, cyc: &[usize]) -> Result<bool> {
    g.check_cycle(cyc)?;
    disk_embeddable(g, cyc)
}

/// Cylinder of `k` concentric cycles of length `len` (cycle 1 innermost)
/// with chords ("transactions") on cycle 1, each carrying an edge sign.
struct Cylinder {
    k: usize,
    len: usize,
    transactions: Vec<(usize, usize, i8)>,
}

impl Cylinder {
    fn v(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.len + (j - 1)
    }

    /// 1-based position on a cycle, wrapping.
    fn wrap(&self, j: isize) -> usize {
        (j - 1).rem_euclid(self.len as isize) as usize + 1
    }

    fn add_handle(&mut self, p: usize) {
        let (k, a) = (self.k, 4 * self.k * (p - 1));
        for h in 1..=k {
            self.transactions.push((a + h, a + 3 * k - h + 1, 1));
        }
        for h in 1..=k {
            self.transactions.push((a + k + h, a + 4 * k - h + 1, 1));
        }
    }

    fn add_crosscap(&mut self, p: usize) {
        let (k, a) = (self.k, 4 * self.k * (p - 1));
        for h in 1..=2 * k {
            self.transactions.push((a + h, a + 2 * k + h, -1));
        }
    }

    fn build(&self) -> (Graph, Embedding, Tags) {
        let (k, len) = (self.k, self.len);
        let n = k * len;
        let mut partner: Vec<Option<usize>> = vec![None; len + 1];
        for &(a, b, _) in &self.transactions {
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        let mut rotation = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for i in 1..=k {
            for j in 1..=len {
                let x = self.v(i, j);
                let next = self.v(i, self.wrap(j as isize + 1));
                let prev = self.v(i, self.wrap(j as isize - 1));
                let rot = &mut rotation[x];
                if i < k {
                    rot.push(self.v(i + 1, j));
                }
                rot.push(next);
                if i > 1 {
                    rot.push(self.v(i - 1, j));
                } else if let Some(b) = partner[j] {
                    rot.push(self.v(1, b));
                }
                rot.push(prev);
                edges.push((x, next));
                if i < k {
                    edges.push((x, self.v(i + 1, j)));
                }
            }
        }
        let mut tags = Tags::default();
        let mut tr = Vec::new();
        let mut emb_twists = Vec::new();
        for &(a, b, s) in &self.transactions {
            let (x, y) = (self.v(1, a), self.v(1, b));
            edges.push((x, y));
            tr.push((x.min(y), x.max(y)));
            if s < 0 {
                emb_twists.push((x, y));
            }
        }
        let labels = (1..=k).flat_map(|i| (1..=len).map(move |j| format!("{i},{j}"))).collect();
        let g = Graph::build(n, &edges).unwrap().with_labels(labels).unwrap();
        let mut emb = Embedding::orientable(rotation);
        for (x, y) in emb_twists {
            emb.set_sign(x, y, -1);
        }
        for i in 1..=k {
            tags.vertices.insert(format!("C{i}"), (1..=len).map(|j| self.v(i, j)).collect());
        }
        for j in 1..=len {
            tags.vertices.insert(format!("P{j}"), (1..=k).map(|i| self.v(i, j)).collect());
        }
        tags.vertices.insert("simple_cycle".into(), (1..=len).map(|j| self.v(k, j)).collect());
        if !tr.is_empty() {
            tags.edges.insert("transactions".into(), tr);
        }
        (g, emb, tags)
    }
}

fn dyck_cylinder(k: usize, h: usize, c: usize) -> Cylinder {
    let mut cyl = Cylinder { k, len: 4 * k * (1 + h + c), transactions: Vec::new() };
    for p in 2..=h + 1 {
        cyl.add_handle(p);
    }
    for p in h + 2..=h + 1 + c {
        cyl.add_crosscap(p);
    }
    cyl
}

/// The longest face of an embedding other than the given cycle, as a
/// closed walk.
fn longest_other_face(g: &Graph, emb: &Embedding, other: &[usize]) -> Option<Vec<usize>> {
    let same_cycle = |f: &[usize]| {
        let l = other.len();
        f.len() == l
            && (0..l).any(|r| (0..l).all(|i| f[(i + r) % l] == other[i]) || (0..l).all(|i| f[(r + l - i) % l] == other[i]))
    };
    trace(g, emb).ok()?.faces.into_iter().filter(|f| !same_cycle(f)).max_by_key(|f| f.len())
}

/// Drop every rotation entry that is no longer an edge and renumber.
fn restrict_embedding(g: &Graph, emb: &Embedding, map: &[usize]) -> Embedding {
    let mut rotation = vec![Vec::new(); g.n()];
    for (old, rot) in emb.rotation.iter().enumerate() {
        let x = map[old];
        if x == usize::MAX {
            continue;
        }
        rotation[x] = rot.iter().map(|&w| map[w]).filter(|&y| y != usize::MAX && g.has_edge(x, y)).collect();
    }
    let mut out = Embedding::orientable(rotation);
    for &(a, b) in &emb.twisted {
        let (x, y) = (map[a], map[b]);
        if x != usize::MAX && y != usize::MAX && g.has_edge(x, y) {
            out.set_sign(x, y, -1);
        }
    }
    out
}

/// Keep the vertices with `keep[v]` and the edges accepted by `edge_ok`.
fn subgraph(g: &Graph, keep: &[bool], edge_ok: impl Fn(usize, usize) -> bool) -> (Graph, Vec<usize>) {
    let mut map = vec![usize::MAX; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if keep[v] {
            map[v] = next;
            next += 1;
        }
    }
    let edges: Vec<_> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| keep[u] && keep[v] && edge_ok(u, v))
        .map(|(u, v)| (map[u], map[v]))
        .collect();
    let mut h = Graph::build(next, &edges).unwrap();
    if let Some(l) = g.labels() {
        let labels = (0..g.n()).filter(|&v| keep[v]).map(|v| l[v].clone()).collect();
        h = h.with_labels(labels).unwrap();
    }
    (h, map)
}

fn remap_tags(tags: &Tags, map: &[usize], g: &Graph) -> Tags {
    let mut out = Tags::default();
    for (name, vs) in &tags.vertices {
        if vs.iter().all(|&v| map[v] != usize::MAX) {
            out.vertices.insert(name.clone(), vs.iter().map(|&v| map[v]).collect());
        }
    }
    for (name, es) in &tags.edges {
        let kept: Vec<_> = es
            .iter()
            .filter(|&&(a, b)| map[a] != usize::MAX && map[b] != usize::MAX && g.has_edge(map[a], map[b]))
            .map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b])))
            .collect();
        if !kept.is_empty() {
            out.edges.insert(name.clone(), kept);
        }
    }
    out
}

/// Grid with `n` rows and `m` columns; vertex (i, j) at `(i-1)·m + (j-1)`.
fn grid(n: usize, m: usize) -> (Graph, Embedding) {
    let id = |i: usize, j: usize| (i - 1) * m + (j - 1);
    let mut edges = Vec::new();
    let mut rotation = vec![Vec::new(); n * m];
    for i in 1..=n {
        for j in 1..=m {
            let rot = &mut rotation[id(i, j)];
            // counter-clockwise: right, up, left, down
            if j < m {
                rot.push(id(i, j + 1));
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i > 1 {
                rot.push(id(i - 1, j));
            }
            if j > 1 {
                rot.push(id(i, j - 1));
            }
            if i < n {
                rot.push(id(i + 1, j));
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    let labels = (1..=n).flat_map(|i| (1..=m).map(move |j| format!("{i},{j}"))).collect();
    (Graph::build(n * m, &edges).unwrap().with_labels(labels).unwrap(), Embedding::orientable(rotation))
}

fn wall(k: usize) -> (Graph, Embedding, Tags) {
    let m = 2 * k;
    let (g, emb) = grid(k, m);
    let id = |i: usize, j: usize| (i - 1) * m + (j - 1);
    // the i-th edge of column j joins rows i and i+1
    let dropped = |u: usize, v: usize| {
        let (a, b) = (u.min(v), u.max(v));
        if b != a + m {
            return false;
        }
        let (i, j) = (a / m + 1, a % m + 1);
        (i % 2 == 1 && j % 2 == 1) || (i % 2 == 0 && j % 2 == 0)
    };
    let degree = |v: usize| g.neighbors(v).iter().filter(|&&w| !dropped(v, w)).count();
    let keep: Vec<bool> = (0..g.n()).map(|v| degree(v) != 1).collect();
    let (w, map) = subgraph(&g, &keep, |u, v| !dropped(u, v));
    let w_emb = restrict_embedding(&w, &emb, &map);
    let mut tags = Tags::default();
    for i in 1..=k {
        let row: Vec<usize> = (1..=m).map(|j| map[id(i, j)]).filter(|&x| x != usize::MAX).collect();
        tags.vertices.insert(format!("R{i}"), row);
    }
    if let Some(p) = longest_other_face(&w, &w_emb, &[]) {
        tags.vertices.insert("perimeter".into(), p);
    }
    (w, w_emb, tags)
}

fn dyck_wall(t: usize, h: usize, c: usize) -> (Graph, Embedding, Tags) {
    let cyl = dyck_cylinder(2 * t, h, c);
    let (g, emb, tags) = cyl.build();
    let len = cyl.len;
    let keep: Vec<bool> = (0..g.n()).map(|v| v / len < t).collect();
    let dropped = |u: usize, v: usize| {
        let (a, b) = (u.min(v), u.max(v));
        let (i, j) = (a / len + 1, a % len + 1);
        let (i2, j2) = (b / len + 1, b % len + 1);
        if j == j2 && i2 == i + 1 {
            // track edge v_j^i v_j^{i+1}
            return i % 2 == j % 2;
        }
        if i == 1 && i2 == 1 && cyl.transactions.iter().any(|&(x, y, _)| (x.min(y), x.max(y)) == (j, j2)) {
            return j % 2 == 0;
        }
        false
    };
    let (w, map) = subgraph(&g, &keep, |u, v| !dropped(u, v));
    let w_emb = restrict_embedding(&w, &emb, &map);
    let mut wtags = remap_tags(&tags, &map, &w);
    wtags.vertices.retain(|name, _| !name.starts_with('P'));
    let simple: Vec<usize> = (1..=len).map(|j| map[(t - 1) * len + j - 1]).collect();
    wtags.vertices.insert("simple_cycle".into(), simple.clone());
    if let Some(f) = longest_other_face(&w, &w_emb, &simple) {
        wtags.vertices.insert("exceptional_face".into(), f);
    }
    (w, w_emb, wtags)
}

/// Host position of each pattern position along a Dyck cylinder, with the
/// handle and crosscap blocks aligned so that transactions land on
/// transactions. Shifts are by `k_big - k_small`.
fn cylinder_positions(small: &Cylinder, big: &Cylinder, h: usize, c: usize) -> Vec<usize> {
    let (ks, kb) = (small.k, big.k);
    // (block length multiplier, aligned at end) per block, segment by segment
    let mut blocks = vec![(4, false)];
    for _ in 0..h {
        blocks.extend([(1, false), (1, false), (1, true), (1, true)]);
    }
    for _ in 0..c {
        blocks.extend([(2, false), (2, false)]);
    }
    let mut phi = Vec::with_capacity(small.len);
    let mut start = 0;
    for (mult, at_end) in blocks {
        let (bs, bb) = (mult * ks, mult * kb);
        for x in 1..=bs {
            phi.push(start + if at_end { x + bb - bs } else { x });
        }
        start += bb;
    }
    phi
}

/// A minor model of a smaller member of a Dyck family in a larger one with
/// the same surface parameters: cycle `i` goes to cycle `i`, and each
/// vertex takes the run of host vertices up to the image of its successor.
pub fn growth_model(small: &FamilySpec, big: &FamilySpec) -> Option<crate::minor::MinorModel> {
    let (ks, kb, cycles, h, c) = match (small, big) {
        (FamilySpec::DyckGrid { k, h, c }, FamilySpec::DyckGrid { k: k2, h: h2, c: c2 }) if (h, c) == (h2, c2) && k <= k2 => {
            (*k, *k2, *k, *h, *c)
        }
        (FamilySpec::DyckWall { t, h, c }, FamilySpec::DyckWall { t: t2, h: h2, c: c2 }) if (h, c) == (h2, c2) && t <= t2 => {
            (2 * t, 2 * t2, *t, *h, *c)
        }
        _ => return None,
    };
    let (cs, cb) = (dyck_cylinder(ks, h, c), dyck_cylinder(kb, h, c));
    let phi = cylinder_positions(&cs, &cb, h, c);
    let mut branch = Vec::with_capacity(cycles * cs.len);
    for i in 1..=cycles {
        for j in 0..cs.len {
            let end = if j + 1 < cs.len { phi[j + 1] } else { cb.len + 1 };
            branch.push((phi[j]..end).map(|p| cb.v(i, p)).collect());
        }
    }
    Some(crate::minor::MinorModel { branch })
}

/// Build the graph for a family spec.
pub fn generate(spec: &FamilySpec) -> Result<GeneratedGraph> {
    spec.validate()?;
    use FamilySpec::*;
    let mut degenerate = false;
    let (graph, emb, tags) = match spec {
        AnnulusGrid { k } => {
            let (g, e, t) = Cylinder { k: *k, len: 4 * k, transactions: vec![] }.build();
            (g, Some(e), t)
        }
        CylGrid { n, m } => {
            let (g, e, t) = Cylinder { k: *m, len: *n, transactions: vec![] }.build();
            (g, Some(e), t)
        }
        Grid { n, m } => {
            let (g, e) = grid(*n, *m);
            (g, Some(e), Tags::default())
        }
        HandleGrid { k } | CrosscapGrid { k } => {
            let mut cyl = Cylinder { k: *k, len: 4 * k, transactions: vec![] };
            if matches!(spec, HandleGrid { .. }) {
                cyl.add_handle(1);
            } else {
                cyl.add_crosscap(1);
            }
            let (g, e, t) = cyl.build();
            (g, Some(e), t)
        }
        DyckGrid { k, h, c } => {
            degenerate = *k < 3;
            let (g, e, mut t) = dyck_cylinder(*k, *h, *c).build();
            let simple = t.vertices["simple_cycle"].clone();
            if let Some(f) = longest_other_face(&g, &e, &simple) {
                t.vertices.insert("exceptional_face".into(), f);
            }
            (g, Some(e), t)
        }
        Wall { k } => {
            let (g, e, t) = wall(*k);
            (g, Some(e), t)
        }
        DyckWall { t, h, c } => {
            degenerate = *t < 3;
            let (g, e, tg) = dyck_wall(*t, *h, *c);
            (g, Some(e), tg)
        }
        ShallowVortexGrid { k } => {
            let mut cyl = Cylinder { k: *k, len: 4 * k, transactions: vec![] };
            for i in 1..=*k {
                let a = 4 * (i - 1);
                cyl.transactions.push((a + 1, a + 3, -1));
                cyl.transactions.push((a + 2, a + 4, -1));
            }
            let (g, e, mut t) = cyl.build();
            if let Some(tr) = t.edges.remove("transactions") {
                t.edges.insert("crossings".into(), tr);
            }
            // each crossing pair is drawn through its own cross-cap unless the graph is planar
            let e = planar_embedding(&g).unwrap_or(e);
            (g, Some(e), t)
        }
        RingBlowup { base, cycle } => {
            let g = resolve_graph(base)?;
            let (b, t) = ring_blowup(&g, cycle)?;
            (b, None, t)
        }
        MobiusLadder { order } => (mobius_ladder(*order), None, Tags::default()),
        Complete { n } => (complete(*n), None, Tags::default()),
        CompleteBipartite { m, n } => (complete_bipartite(*m, *n), None, Tags::default()),
        PetersenFamily { index } => (graph6::decode_str(PETERSEN_FAMILY[*index])?, None, Tags::default()),
        GraphJ => (graph_j(), None, Tags::default()),
    };
    Ok(GeneratedGraph { graph, spec: spec.clone(), tags, canonical_embedding: emb, degenerate })
}

/// Ring blowup of the facial pair (g, C). Each cycle vertex v becomes
/// adjacent twins v¹, v²; twins of consecutive cycle vertices are joined
/// completely; every neighbour of v outside C sees both twins. Chords of C
/// are not carried over.
pub fn ring_blowup(g: &Graph, cyc: &[usize]) -> Result<(Graph, Tags)> {
    g.check_cycle(cyc)?;
    let apexed = g.add_vertex(cyc)?;
    if let Planarity::NonPlanar(ev) = is_planar(&apexed) {
        return Err(Error::NotFacial { evidence: ev.edges });
    }
    let n = g.n();
    let mut on_cycle = vec![None; n];
    for (i, &v) in cyc.iter().enumerate() {
        on_cycle[v] = Some(i);
    }
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if on_cycle[v].is_none() {
            map[v] = next;
            next += 1;
        }
    }
    let base = next;
    let twin = |i: usize, s: usize| base + 2 * i + s;
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        match (on_cycle[u], on_cycle[v]) {
            (None, None) => edges.push((map[u], map[v])),
            (None, Some(i)) | (Some(i), None) => {
                let x = if on_cycle[u].is_none() { map[u] } else { map[v] };
                edges.push((x, twin(i, 0)));
                edges.push((x, twin(i, 1)));
            }
            (Some(_), Some(_)) => {}
        }
    }
    let l = cyc.len();
    for i in 0..l {
        edges.push((twin(i, 0), twin(i, 1)));
        let j = (i + 1) % l;
        for s in 0..2 {
            for t in 0..2 {
                edges.push((twin(i, s), twin(j, t)));
            }
        }
    }
    let total = base + 2 * l;
    let mut labels = vec![String::new(); total];
    for v in 0..n {
        match on_cycle[v] {
            None => labels[map[v]] = format!("{v}"),
            Some(i) => {
                labels[twin(i, 0)] = format!("{v}^1");
                labels[twin(i, 1)] = format!("{v}^2");
            }
        }
    }
    let b = Graph::build(total, &edges)?.with_labels(labels)?;
    let mut tags = Tags::default();
    tags.vertices.insert("ring1".into(), (0..l).map(|i| twin(i, 0)).collect());
    tags.vertices.insert("ring2".into(), (0..l).map(|i| twin(i, 1)).collect());
    Ok((b, tags))
}

/// The canonical embedding of a grid-like family.
pub fn canonical_embedding(spec: &FamilySpec) -> Result<Embedding> {
    generate(spec)?
        .canonical_embedding
        .ok_or_else(|| Error::Unsupported(format!("no canonical embedding for {spec:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphic;
    use crate::surface::Surface;

    #[test]
    fn small_identities() {
        let v1 = generate(&FamilySpec::ShallowVortexGrid { k: 1 }).unwrap().graph;
        assert!(isomorphic(&v1, &complete(4)).unwrap());
        assert!(isomorphic(&mobius_ladder(6), &complete_bipartite(3, 3)).unwrap());
        let h1 = generate(&FamilySpec::HandleGrid { k: 1 }).unwrap().graph;
        assert!(isomorphic(&h1, &complete(4)).unwrap());
    }

    #[test]
    fn ring_blowup_of_k4_is_k7() {
        let b = generate(&FamilySpec::RingBlowup { base: "k4".into(), cycle: vec![0, 1, 2] }).unwrap();
        assert!(isomorphic(&b.graph, &complete(7)).unwrap());
    }

    #[test]
    fn ring_blowup_rejects_nonfacial_cycle() {
        let err = ring_blowup(&complete(5), &[0, 1, 2]).unwrap_err();
        assert!(matches!(err, Error::NotFacial { .. }));
    }

    #[test]
    fn dyck_grid_counts_and_witness() {
        for k in 1..=3 {
            for (h, c) in [(0, 0), (1, 0), (0, 1), (0, 2), (1, 1), (2, 0)] {
                let g = generate(&FamilySpec::DyckGrid { k, h, c }).unwrap();
                let l = 4 * k * (1 + h + c);
                assert_eq!(g.graph.n(), k * l);
                assert_eq!(g.graph.m(), (2 * k - 1) * l + 2 * k * (h + c));
                let s = crate::embed::verify_embedding(&g.graph, g.canonical_embedding.as_ref().unwrap()).unwrap();
                assert_eq!(s, Surface::normalize(h, c), "k={k} h={h} c={c}");
            }
        }
    }

    #[test]
    fn walls_are_subcubic_and_planar() {
        for k in 3..=5 {
            let w = generate(&FamilySpec::Wall { k }).unwrap();
            assert!((0..w.graph.n()).all(|v| (2..=3).contains(&w.graph.degree(v))));
            assert!(crate::embed::planar(&w.graph));
            let p = &w.tags.vertices["perimeter"];
            w.graph.check_cycle(p).unwrap();
        }
    }

    #[test]
    fn named_graphs() {
        assert_eq!(named("k33").unwrap().m(), 9);
        assert_eq!(named("k3,4").unwrap().m(), 12);
        assert_eq!(named("k7").unwrap().m(), 21);
        assert_eq!(named("petersen").unwrap().m(), 15);
        assert_eq!(named("m8").unwrap().m(), 12);
        assert_eq!(named("j").unwrap().n(), 9);
        assert!(named("zzz").is_none());
    }

    #[test]
    fn facial_checks() {
        assert!(is_facial(&complete(4), &[0, 1, 2]).unwrap());
        assert!(!is_facial(&complete(5), &[0, 1, 2]).unwrap());
        assert!(is_facial(&cycle(6), &[0, 1, 2, 3, 4, 5]).unwrap());
        assert!(is_facial(&complete(4), &[0, 1]).is_err());
    }
}
