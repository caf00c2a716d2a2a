//! Brute-force reference implementations. Slow by design and independent
//! of the searchers they check: they share no code with the genus engine,
//! the minor engine or the apex test.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::graph::Graph;
use crate::iso::isomorphic;
use crate::surface::Surface;

pub mod mutation;

/// Every connected graph with at most `max_edges` edges (and at least one
/// vertex), one per isomorphism class, grown edge by edge.
pub fn connected_graphs(max_edges: usize) -> Vec<Graph> {
    let mut layers: Vec<Vec<Graph>> = vec![vec![Graph::empty(1)]];
    for _ in 0..max_edges {
        let mut next: HashMap<(usize, Vec<usize>), Vec<Graph>> = HashMap::new();
        for g in layers.last().unwrap() {
            let mut children = Vec::new();
            for u in 0..g.n() {
                children.push(g.add_vertex(&[u]).unwrap());
                for v in u + 1..g.n() {
                    if !g.has_edge(u, v) {
                        children.push(g.add_edge(u, v).unwrap());
                    }
                }
            }
            for c in children {
                let mut degs: Vec<usize> = (0..c.n()).map(|v| c.degree(v)).collect();
                degs.sort_unstable();
                let bucket = next.entry((c.n(), degs)).or_default();
                if !bucket.iter().any(|x| isomorphic(x, &c).unwrap()) {
                    bucket.push(c);
                }
            }
        }
        let mut layer: Vec<Graph> = next.into_values().flatten().collect();
        layer.sort_by_key(|g| (g.n(), g.edges()));
        layers.push(layer);
    }
    layers.into_iter().flatten().collect()
}

/// Number of faces of a signed rotation system: orbits of the face-walk
/// permutation on (vertex, rotation slot, local orientation) states,
/// halved because every face is walked once in each direction.
pub(crate) fn face_count(rot: &[Vec<usize>], negative: &BTreeSet<(usize, usize)>) -> usize {
    let n = rot.len();
    let mut base = vec![0usize; n + 1];
    for v in 0..n {
        base[v + 1] = base[v] + rot[v].len();
    }
    let slot = |v: usize, w: usize| rot[v].iter().position(|&x| x == w).unwrap();
    let total = base[n] * 2;
    let mut seen = vec![false; total];
    let mut orbits = 0;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut st = start;
        while !seen[st] {
            seen[st] = true;
            let (dart, forward) = (st / 2, st % 2 == 0);
            let v = base.partition_point(|&b| b <= dart) - 1;
            let i = dart - base[v];
            let w = rot[v][i];
            let flip = negative.contains(&(v.min(w), v.max(w)));
            let fwd = forward != flip;
            let d = rot[w].len();
            let j = slot(w, v);
            let k = if fwd { (j + 1) % d } else { (j + d - 1) % d };
            st = 2 * (base[w] + k) + usize::from(!fwd);
        }
    }
    orbits / 2
}

fn permutations_fixing_first(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 2 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    let rest = &items[1..];
    let mut idx: Vec<usize> = (0..rest.len()).collect();
    loop {
        let mut p = vec![items[0]];
        p.extend(idx.iter().map(|&i| rest[i]));
        out.push(p);
        // next lexicographic permutation of idx
        let Some(i) = (0..idx.len().saturating_sub(1)).rev().find(|&i| idx[i] < idx[i + 1]) else { break };
        let j = (i + 1..idx.len()).rev().find(|&j| idx[j] > idx[i]).unwrap();
        idx.swap(i, j);
        idx[i + 1..].reverse();
    }
    out
}

fn spanning_forest(g: &Graph) -> BTreeSet<(usize, usize)> {
    let mut seen = vec![false; g.n()];
    let mut tree = BTreeSet::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    tree.insert((x.min(y), x.max(y)));
                    queue.push_back(y);
                }
            }
        }
    }
    tree
}

/// Visit every signed rotation system with tree edges positive; the
/// callback gets the face count and whether any edge is negative.
fn for_each_system(g: &Graph, signed: bool, mut f: impl FnMut(&[Vec<usize>], usize, bool)) {
    let choices: Vec<Vec<Vec<usize>>> = (0..g.n()).map(|v| permutations_fixing_first(g.neighbors(v))).collect();
    let tree = spanning_forest(g);
    let cotree: Vec<(usize, usize)> = g.edges().into_iter().filter(|e| !tree.contains(e)).collect();
    let sign_masks: u64 = if signed { 1 << cotree.len() } else { 1 };
    let mut idx = vec![0usize; g.n()];
    loop {
        let rot: Vec<Vec<usize>> = (0..g.n()).map(|v| choices[v][idx[v]].clone()).collect();
        for mask in 0..sign_masks {
            let negative: BTreeSet<(usize, usize)> = cotree.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let faces = face_count(&rot, &negative);
            f(&rot, faces, mask != 0);
        }
        let mut v = 0;
        loop {
            if v == g.n() {
                return;
            }
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// `(eg, γ, ~γ)` of a connected graph by enumerating every signed rotation
/// system. Trees report `~γ = 1`.
pub fn genus_brute(g: &Graph) -> (usize, usize, usize) {
    assert!(g.is_connected(), "oracle handles connected graphs");
    if g.m() == 0 {
        return (0, 0, 1);
    }
    let (v, e) = (g.n() as isize, g.m() as isize);
    let mut eg = usize::MAX;
    let mut orient = usize::MAX;
    let mut nonorient = usize::MAX;
    for_each_system(g, true, |_, faces, twisted| {
        let k = (2 - v + e - faces as isize) as usize;
        eg = eg.min(k);
        if twisted {
            nonorient = nonorient.min(k);
        } else {
            orient = orient.min(k / 2);
        }
    });
    (eg, orient, if nonorient == usize::MAX { 1 } else { nonorient.max(1) })
}

/// Is `h` a minor of `g`? Tries every map of host vertices to "deleted" or
/// a pattern vertex. Hosts up to 10 vertices.
pub fn naive_minor(h: &Graph, g: &Graph) -> bool {
    let (k, n) = (h.n(), g.n());
    assert!(n <= 10, "oracle host too large");
    if k == 0 {
        return true;
    }
    if k > n {
        return false;
    }
    let gadj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |a, &w| a | 1 << w)).collect();
    let connected = |set: u32| -> bool {
        let start = set & set.wrapping_neg();
        let mut reach = start;
        loop {
            let mut grow = reach;
            let mut r = reach;
            while r != 0 {
                let x = r.trailing_zeros();
                r &= r - 1;
                grow |= gadj[x as usize] & set;
            }
            if grow == reach {
                return reach == set;
            }
            reach = grow;
        }
    };
    let mut label = vec![0usize; n];
    loop {
        let mut sets = vec![0u32; k];
        for (x, &l) in label.iter().enumerate() {
            if l > 0 {
                sets[l - 1] |= 1 << x;
            }
        }
        if sets.iter().all(|&s| s != 0 && connected(s)) {
            let touch = |a: u32, b: u32| (0..n).any(|x| a >> x & 1 == 1 && gadj[x] & b != 0);
            if h.edges().iter().all(|&(p, q)| touch(sets[p], sets[q])) {
                return true;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            label[i] += 1;
            if label[i] <= k {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

/// Vertex sets of the faces of every planar rotation system of a
/// connected graph.
fn planar_face_sets(g: &Graph) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    if g.m() == 0 {
        out.insert((0..g.n()).collect());
        return out;
    }
    let (v, e) = (g.n() as isize, g.m() as isize);
    for_each_system(g, false, |rot, faces, _| {
        if 2 - v + e - faces as isize != 0 {
            return;
        }
        // walk the faces once more to collect their vertices
        let mut used = BTreeSet::new();
        for a in 0..rot.len() {
            for &b in &rot[a] {
                if used.contains(&(a, b)) {
                    continue;
                }
                let mut face = BTreeSet::new();
                let (mut x, mut y) = (a, b);
                while used.insert((x, y)) {
                    face.insert(x);
                    let d = rot[y].len();
                    let j = rot[y].iter().position(|&w| w == x).unwrap();
                    let z = rot[y][(j + 1) % d];
                    x = y;
                    y = z;
                }
                out.insert(face.into_iter().collect());
            }
        }
    });
    out
}

/// Does `g` embed in a closed disk with every vertex of `x` on the
/// boundary? Each component needs a planar embedding with a face through
/// all of its `x` vertices.
pub fn disk_brute(g: &Graph, x: &[usize]) -> bool {
    for comp in g.components() {
        let (sub, map) = g.induced(&comp);
        let want: Vec<usize> = (0..sub.n()).filter(|&i| x.contains(&map[i])).collect();
        let faces = planar_face_sets(&sub);
        if !faces.iter().any(|f| want.iter().all(|w| f.binary_search(w).is_ok())) {
            return false;
        }
    }
    true
}

/// `a ⪯ b` by breadth-first search over "add a handle" / "add a crosscap"
/// moves, up to Euler genus `eg_cap`.
pub fn surface_leq_bfs(a: &Surface, b: &Surface, eg_cap: usize) -> bool {
    let (Surface::Standard { h, c }, Some(target)) = (*a, b.eg()) else { return matches!(a, Surface::Empty) };
    let start = Surface::normalize(h, c);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        if s == *b {
            return true;
        }
        let Surface::Standard { h, c } = s else { unreachable!() };
        for next in [Surface::normalize(h + 1, c), Surface::normalize(h, c + 1)] {
            if next.eg().unwrap() <= eg_cap.max(target) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    false
}

/// G(n, p) with a seeded generator.
pub fn random_graph(rng: &mut impl rand::Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges).unwrap()
}

/// Fixed corpus of (pattern ≤ 4 vertices, host ≤ 8 vertices) pairs.
pub fn minor_corpus(seed: u64, count: usize) -> Vec<(Graph, Graph)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let hn = rng.gen_range(1..=4);
            let hp = rng.gen_range(0.3..1.0);
            let gn = rng.gen_range(hn..=8);
            let gp = rng.gen_range(0.15..0.8);
            (random_graph(&mut rng, hn, hp), random_graph(&mut rng, gn, gp))
        })
        .collect()
}

/// Simple cycles of length 3..=`max_len` through which an apex keeps `g`
/// planar, each once (least vertex first, second < last).
pub fn facial_cycles(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, max_len: usize, out: &mut Vec<Vec<usize>>) {
        let (start, last) = (path[0], *path.last().unwrap());
        for &w in g.neighbors(last) {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            }
            if w > start && !path.contains(&w) && path.len() < max_len {
                path.push(w);
                extend(g, path, max_len, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..g.n() {
        extend(g, &mut vec![v], max_len, &mut out);
    }
    out.retain(|c| crate::family::is_facial(g, c).unwrap_or(false));
    out
}

/// Ring blowups of small planar bases over each of their facial cycles, up
/// to isomorphism, with at most `max_n` vertices.
pub fn ring_blowup_corpus(max_n: usize) -> Vec<(String, Graph)> {
    use crate::family::{complete, complete_bipartite, cycle, generate, ring_blowup, FamilySpec};
    let wheel = |k: usize| cycle(k).add_vertex(&(0..k).collect::<Vec<_>>()).unwrap();
    let prism = generate(&FamilySpec::CylGrid { n: 3, m: 2 }).unwrap().graph;
    let cube = generate(&FamilySpec::CylGrid { n: 4, m: 2 }).unwrap().graph;
    let octahedron = complete_bipartite(2, 2).add_vertex(&[0, 1, 2, 3]).unwrap().add_vertex(&[0, 1, 2, 3]).unwrap();
    let bases = [
        ("C3", cycle(3)),
        ("C4", cycle(4)),
        ("C5", cycle(5)),
        ("C6", cycle(6)),
        ("K4", complete(4)),
        ("W4", wheel(4)),
        ("W5", wheel(5)),
        ("prism", prism),
        ("octahedron", octahedron),
        ("cube", cube),
    ];
    let mut out: Vec<(String, Graph)> = Vec::new();
    for (name, base) in bases {
        for cyc in facial_cycles(&base, 6) {
            if base.n() + cyc.len() > max_n {
                continue;
            }
            let (g, _) = ring_blowup(&base, &cyc).unwrap();
            let g = g.without_labels();
            if !out.iter().any(|(_, o)| o.n() == g.n() && o.m() == g.m() && isomorphic(o, &g).unwrap()) {
                out.push((format!("ring_blowup({name}, {cyc:?})"), g));
            }
        }
    }
    out
}

/// Named non-planar graphs of at most 12 vertices, with ring blowups and
/// K5 / K3,3 carrying planar attachments.
pub fn kuratowski_corpus() -> Vec<(String, Graph)> {
    use crate::family::{complete, complete_bipartite, mobius_ladder, named, petersen};
    let mut out = vec![
        ("K5".to_string(), complete(5)),
        ("K3,3".into(), complete_bipartite(3, 3)),
        ("K6".into(), complete(6)),
        ("K7".into(), complete(7)),
        ("Petersen".into(), petersen()),
        ("Wagner".into(), mobius_ladder(8)),
    ];
    for i in 0..7 {
        out.push((format!("PF{i}"), named(&format!("pf{i}")).unwrap()));
    }
    let k5 = complete(5);
    out.push(("K5 + pendant".into(), k5.add_vertex(&[0]).unwrap()));
    out.push(("K5 + pendant path".into(), k5.add_vertex(&[0]).unwrap().add_vertex(&[5]).unwrap()));
    out.push(("K5 + degree-2 vertex".into(), k5.add_vertex(&[0, 1]).unwrap()));
    out.push(("K5 + degree-3 vertex".into(), k5.add_vertex(&[0, 1, 2]).unwrap()));
    out.push(("K5 + two degree-3 vertices".into(), k5.add_vertex(&[0, 1, 2]).unwrap().add_vertex(&[0, 1, 5]).unwrap()));
    out.push(("K5 + triangle on a triangle".into(), {
        let g = k5.add_vertex(&[0]).unwrap().add_vertex(&[1, 5]).unwrap();
        g.add_vertex(&[2, 5, 6]).unwrap()
    }));
    let k33 = complete_bipartite(3, 3);
    out.push(("K3,3 + degree-3 vertex".into(), k33.add_vertex(&[0, 1, 3]).unwrap()));
    out.push(("K3,3 + pendant".into(), k33.add_vertex(&[0]).unwrap()));
    out.extend(ring_blowup_corpus(12));
    out
}

/// Checks core containment on every ordered pair of non-trivial separations
/// of order at most three: (X, Y) with core C inside X∖Y, (Z, W) with
/// X ⊆ W and core D; the claim is C ⊆ D.
pub fn core_nesting(h: &Graph) -> crate::error::Result<NestingReport> {
    use crate::kuratowski::{core_component, separations, CoreStatus};
    let mut oriented = Vec::new();
    for s in separations(h, 3, true) {
        oriented.push(s.swapped());
        oriented.push(s);
    }
    let mut cores: HashMap<Vec<usize>, Option<Vec<usize>>> = HashMap::new();
    let mut core_of = |s: &crate::graph::Separation| -> crate::error::Result<Option<Vec<usize>>> {
        let key = s.separator();
        if let Some(c) = cores.get(&key) {
            return Ok(c.clone());
        }
        let c = match core_component(h, s)?.status {
            CoreStatus::Found(c) => Some(c),
            CoreStatus::NoneFound(_) => None,
        };
        cores.insert(key, c.clone());
        Ok(c)
    };
    let mut report = NestingReport::default();
    for xy in &oriented {
        let Some(c) = core_of(xy)? else { continue };
        if !c.iter().all(|v| !xy.b.contains(v)) {
            continue;
        }
        let x: BTreeSet<usize> = xy.a.iter().copied().collect();
        for zw in &oriented {
            if !x.iter().all(|v| zw.b.contains(v)) {
                continue;
            }
            let Some(d) = core_of(zw)? else { continue };
            // X∖Y avoids Z
            let nested = xy.a.iter().all(|v| xy.b.contains(v) || !zw.a.contains(v));
            report.pairs += 1;
            if nested {
                report.nested_pairs += 1;
            }
            if !c.iter().all(|v| d.contains(v)) {
                let msg = format!("core {c:?} of {xy:?} not inside core {d:?} of {zw:?}");
                if nested {
                    report.nested_violations.push(msg);
                } else {
                    report.crossing_violations.push(msg);
                }
            }
        }
    }
    Ok(report)
}

/// Outcome of [`core_nesting`]. Pairs are split by whether X∖Y avoids Z
/// ("nested"); only nested pairs make the containment argument go through.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct NestingReport {
    pub pairs: usize,
    pub nested_pairs: usize,
    pub nested_violations: Vec<String>,
    /// Pairs with X ⊆ W where X∖Y meets Z∩W.
    pub crossing_violations: Vec<String>,
}

/// Apex test against face enumeration for every boundary set `x` of every
/// graph with at most `max_edges` edges: the connected ones and disjoint
/// unions of two of them up to `max_union_n` vertices.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct ApexReport {
    pub graphs: usize,
    pub instances: usize,
    pub disagreements: Vec<String>,
}

pub fn apex_equivalence(max_edges: usize, max_union_n: usize) -> crate::error::Result<ApexReport> {
    let connected = connected_graphs(max_edges);
    let mut graphs = connected.clone();
    for (i, a) in connected.iter().enumerate() {
        for b in &connected[i..] {
            if a.m() + b.m() <= max_edges && a.n() + b.n() <= max_union_n {
                graphs.push(a.disjoint_union(b));
            }
        }
    }
    let mut r = ApexReport { graphs: graphs.len(), ..Default::default() };
    for g in &graphs {
        for mask in 0u32..1 << g.n() {
            let x: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            r.instances += 1;
            let fast = crate::embed::disk_embeddable(g, &x)?;
            if fast != disk_brute(g, &x) && r.disagreements.len() < 10 {
                r.disagreements.push(format!("{} x={x:?}: apex says {fast}", crate::graph6::encode_string(g)));
            }
        }
    }
    Ok(r)
}

/// Euler genus and orientable genus of random disjoint unions against the
/// sums over the parts.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct AdditivityReport {
    pub unions: usize,
    pub max_eg: usize,
    pub disagreements: Vec<String>,
}

pub fn genus_additivity(seed: u64, count: usize, budget: &crate::budget::Budget) -> crate::error::Result<AdditivityReport> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let opts = crate::embed::GenusOptions::new(budget);
    let named = [crate::family::complete(5), crate::family::complete_bipartite(3, 3), crate::family::complete(6)];
    let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
        if rng.gen_bool(0.3) {
            named[rng.gen_range(0..named.len())].clone()
        } else {
            loop {
                let (n, p) = (rng.gen_range(3..=7), rng.gen_range(0.3..0.8));
                let g = random_graph(rng, n, p);
                if g.m() <= 15 {
                    return g;
                }
            }
        }
    };
    let mut r = AdditivityReport::default();
    while r.unions < count {
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let u = a.disjoint_union(&b);
        let (pa, pb, pu) = (crate::embed::genus_profile(&a, &opts)?, crate::embed::genus_profile(&b, &opts)?, crate::embed::genus_profile(&u, &opts)?);
        r.unions += 1;
        r.max_eg = r.max_eg.max(pu.eg);
        if pu.eg != pa.eg + pb.eg || pu.orientable_genus != pa.orientable_genus + pb.orientable_genus {
            r.disagreements.push(format!(
                "{} + {}: eg {} vs {} + {}, genus {} vs {} + {}",
                crate::graph6::encode_string(&a),
                crate::graph6::encode_string(&b),
                pu.eg,
                pa.eg,
                pb.eg,
                pu.orientable_genus,
                pa.orientable_genus,
                pb.orientable_genus
            ));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete, complete_bipartite, cycle};

    #[test]
    fn known_genera() {
        assert_eq!(genus_brute(&complete(4)), (0, 0, 1));
        assert_eq!(genus_brute(&complete(5)), (1, 1, 1));
        assert_eq!(genus_brute(&complete_bipartite(3, 3)), (1, 1, 1));
        assert_eq!(genus_brute(&cycle(5)), (0, 0, 1));
    }

    #[test]
    fn graph_counts() {
        // connected graphs with 0..=4 edges: 1, 1, 1, 3, 5
        let gs = connected_graphs(4);
        let mut by_m = [0; 5];
        for g in &gs {
            by_m[g.m()] += 1;
        }
        assert_eq!(by_m, [1, 1, 1, 3, 5]);
    }

    #[test]
    fn naive_minor_examples() {
        assert!(naive_minor(&complete(3), &cycle(6)));
        assert!(!naive_minor(&complete(4), &cycle(6)));
        assert!(naive_minor(&complete(4), &complete(4)));
    }

    #[test]
    fn disk_examples() {
        let k4 = complete(4);
        assert!(disk_brute(&k4, &[0, 1, 2]));
        assert!(!disk_brute(&k4, &[0, 1, 2, 3]));
        assert!(disk_brute(&cycle(5), &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn surface_moves() {
        assert!(surface_leq_bfs(&Surface::TORUS, &Surface::normalize(0, 3), 4));
        assert!(!surface_leq_bfs(&Surface::PROJECTIVE_PLANE, &Surface::TORUS, 4));
    }
}
