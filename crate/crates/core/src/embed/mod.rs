//! Combinatorial surface embeddings: signed rotation systems, face tracing,
//! planarity and exact genus search.

mod genus;
mod planarity;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::surface::Surface;

pub use genus::{embeds, euler_genus, genus_profile, GenusOptions, GenusResult, DEFAULT_MAX_BLOCK_EDGES};
pub use planarity::{is_planar, kuratowski_subgraph, kuratowski_subgraph_with_order, planar, planar_embedding, KuratowskiEvidence, KuratowskiKind, Planarity};

/// Signed rotation system: a cyclic neighbour order per vertex and the set of
/// edges with sign −1 ("twisted"); every other edge has sign +1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub rotation: Vec<Vec<usize>>,
    pub twisted: BTreeSet<(usize, usize)>,
}

impl Embedding {
    pub fn orientable(rotation: Vec<Vec<usize>>) -> Embedding {
        Embedding { rotation, twisted: BTreeSet::new() }
    }

    pub fn sign(&self, u: usize, v: usize) -> i8 {
        if self.twisted.contains(&(u.min(v), u.max(v))) {
            -1
        } else {
            1
        }
    }

    pub fn set_sign(&mut self, u: usize, v: usize, sign: i8) {
        let e = (u.min(v), u.max(v));
        if sign < 0 {
            self.twisted.insert(e);
        } else {
            self.twisted.remove(&e);
        }
    }
}

/// One traced face: the vertex sequence of its boundary walk.
pub type Face = Vec<usize>;

/// Result of tracing a signed rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub faces: Vec<Face>,
    pub surface: Surface,
    pub euler_genus: usize,
    pub orientable: bool,
}

fn check_rotation(g: &Graph, emb: &Embedding) -> Result<Vec<HashMap<usize, usize>>> {
    if emb.rotation.len() != g.n() {
        return Err(Error::Embedding {
            vertex: emb.rotation.len().min(g.n()),
            reason: format!("rotation covers {} vertices, graph has {}", emb.rotation.len(), g.n()),
        });
    }
    let mut pos = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let rot = &emb.rotation[v];
        let mut sorted = rot.clone();
        sorted.sort_unstable();
        if sorted != g.neighbors(v) {
            return Err(Error::Embedding { vertex: v, reason: "rotation does not list the incident edges exactly once".into() });
        }
        pos.push(rot.iter().enumerate().map(|(i, &w)| (w, i)).collect());
    }
    for &(u, v) in &emb.twisted {
        if !g.has_edge(u, v) {
            return Err(Error::Embedding { vertex: u, reason: format!("twisted pair {u}-{v} is not an edge") });
        }
    }
    Ok(pos)
}

/// Trace all faces. Traversal state: (vertex, index of the edge being left,
/// orientation). On arrival at `w` with orientation `s`, the next edge is the
/// successor of the arrival edge in `w`'s rotation if `s = +1`, else the
/// predecessor.
pub fn trace(g: &Graph, emb: &Embedding) -> Result<Trace> {
    let pos = check_rotation(g, emb)?;
    let n = g.n();
    let mut base = vec![0usize; n + 1];
    for v in 0..n {
        base[v + 1] = base[v] + g.degree(v);
    }
    let state = |v: usize, i: usize, s: i8| 2 * (base[v] + i) + (s < 0) as usize;
    let mut seen = vec![false; 2 * base[n]];
    let mut faces = Vec::new();
    let mut faces_per_comp = HashMap::new();
    let comps = g.components();
    let mut comp_of = vec![0; n];
    for (ci, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = ci;
        }
    }
    for v in 0..n {
        for i in 0..g.degree(v) {
            for s in [1i8, -1] {
                if seen[state(v, i, s)] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut x, mut j, mut t) = (v, i, s);
                loop {
                    seen[state(x, j, t)] = true;
                    face.push(x);
                    let w = emb.rotation[x][j];
                    let t2 = t * emb.sign(x, w);
                    let back = pos[w][&x];
                    // the same edge side walked in the opposite direction
                    seen[state(w, back, -t2)] = true;
                    let d = emb.rotation[w].len();
                    let nj = if t2 > 0 { (back + 1) % d } else { (back + d - 1) % d };
                    x = w;
                    j = nj;
                    t = t2;
                    if (x, j, t) == (v, i, s) {
                        break;
                    }
                }
                *faces_per_comp.entry(comp_of[v]).or_insert(0usize) += 1;
                faces.push(face);
            }
        }
    }
    let mut eg_total = 0i64;
    for (ci, c) in comps.iter().enumerate() {
        let vc = c.len() as i64;
        let ec = c.iter().map(|&v| g.degree(v)).sum::<usize>() as i64 / 2;
        let fc = if ec == 0 { 1 } else { faces_per_comp[&ci] as i64 };
        let eg = 2 - vc + ec - fc;
        if eg < 0 {
            return Err(Error::Embedding { vertex: c[0], reason: format!("negative Euler genus {eg} in component") });
        }
        eg_total += eg;
    }
    let eg_total = eg_total as usize;
    let orientable = is_orientable(g, emb);
    let surface = if n == 0 {
        Surface::Empty
    } else if orientable {
        if eg_total % 2 == 1 {
            return Err(Error::Embedding { vertex: 0, reason: "odd Euler genus for an orientable system".into() });
        }
        Surface::orientable(eg_total / 2)
    } else {
        Surface::nonorientable(eg_total)
    };
    Ok(Trace { faces, surface, euler_genus: eg_total, orientable })
}

/// Surface realized by a signed rotation system.
pub fn verify_embedding(g: &Graph, emb: &Embedding) -> Result<Surface> {
    Ok(trace(g, emb)?.surface)
}

/// Orientable iff vertex flips can make every sign +1 (parity walk).
pub fn is_orientable(g: &Graph, emb: &Embedding) -> bool {
    let mut flip = vec![0i8; g.n()];
    for s in 0..g.n() {
        if flip[s] != 0 {
            continue;
        }
        flip[s] = 1;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                let want = flip[x] * emb.sign(x, y);
                if flip[y] == 0 {
                    flip[y] = want;
                    stack.push(y);
                } else if flip[y] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// X-disk embeddability, decided as planarity of `g` plus an apex on `x`.
pub fn disk_embeddable(g: &Graph, x: &[usize]) -> Result<bool> {
    if x.is_empty() {
        return Ok(planar(g));
    }
    Ok(planar(&g.add_vertex(x)?))
}

/// Twist one edge lying on two distinct faces of an orientable embedding,
/// merging those faces. Returns `None` if every edge has one face on both sides.
pub(crate) fn twist_merging(g: &Graph, emb: &Embedding) -> Option<Embedding> {
    for (u, v) in g.edges() {
        if emb.twisted.contains(&(u, v)) {
            continue;
        }
        let mut e2 = emb.clone();
        e2.set_sign(u, v, -1);
        if let (Ok(a), Ok(b)) = (trace(g, emb), trace(g, &e2)) {
            if b.faces.len() + 1 == a.faces.len() && !b.orientable {
                return Some(e2);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_planar_rotation() {
        let emb = Embedding::orientable(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]);
        let t = trace(&k4(), &emb).unwrap();
        assert_eq!(t.faces.len(), 4);
        assert_eq!(t.surface, Surface::SPHERE);
    }

    #[test]
    fn cycles_are_planar_under_any_rotation() {
        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let emb = Embedding::orientable(vec![vec![3, 1], vec![2, 0], vec![1, 3], vec![0, 2]]);
        assert_eq!(verify_embedding(&c4, &emb).unwrap(), Surface::SPHERE);
        let mut tw = emb.clone();
        tw.set_sign(0, 1, -1);
        tw.set_sign(2, 3, -1);
        // two twists on a cycle cancel
        assert_eq!(verify_embedding(&c4, &tw).unwrap(), Surface::SPHERE);
        tw.set_sign(1, 2, -1);
        assert_eq!(verify_embedding(&c4, &tw).unwrap(), Surface::PROJECTIVE_PLANE);
    }

    #[test]
    fn malformed_rotation_names_vertex() {
        let emb = Embedding::orientable(vec![vec![1, 2, 3], vec![0, 3], vec![0, 1, 3], vec![0, 2, 1]]);
        match trace(&k4(), &emb) {
            Err(Error::Embedding { vertex, .. }) => assert_eq!(vertex, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isolated_vertices_and_empty_graph() {
        let g = Graph::empty(3);
        let emb = Embedding::orientable(vec![vec![]; 3]);
        assert_eq!(verify_embedding(&g, &emb).unwrap(), Surface::SPHERE);
        let e = Graph::empty(0);
        assert_eq!(verify_embedding(&e, &Embedding::orientable(vec![])).unwrap(), Surface::Empty);
    }

    #[test]
    fn disk_examples() {
        let star = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(disk_embeddable(&star, &[1, 2, 3]).unwrap());
        let k23 = Graph::build(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(!disk_embeddable(&k23, &[2, 3, 4]).unwrap());
        assert!(disk_embeddable(&k4(), &[]).unwrap());
    }
}
