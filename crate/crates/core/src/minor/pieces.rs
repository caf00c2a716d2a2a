//! Reduction of a minor test to blocks (2-connected patterns) or to the
//! 3-connected pieces of the host (3-connected patterns). A piece carries a
//! virtual edge for every 2-separation it was split along; models found in
//! a piece are lifted by routing each virtual edge through the host side it
//! stands for.

use std::collections::VecDeque;

use super::{is_complete, is_k33, is_k_connected, search, AbsenceProof, MinorAnswer, MinorModel, MinorOptions};
use crate::embed::planar;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub graph: Graph,
    /// Piece vertex → host vertex.
    pub to_host: Vec<usize>,
    /// Virtual edge (piece coordinates) → host vertices it may be routed through.
    pub virtual_edges: Vec<((usize, usize), Vec<usize>)>,
}

fn vertex_sets_of_blocks(g: &Graph) -> Vec<Vec<usize>> {
    g.blocks()
        .into_iter()
        .map(|b| {
            let mut vs: Vec<usize> = b.iter().flat_map(|&(u, v)| [u, v]).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect()
}

fn cut_pair(g: &Graph) -> Option<(usize, usize)> {
    for a in 0..g.n() {
        let rest = g.delete_vertex(a).unwrap();
        let blocks = rest.blocks();
        if blocks.len() > 1 {
            // any vertex in two blocks is a cut vertex of G − a
            let mut count = vec![0usize; rest.n()];
            for vs in vertex_sets_of_blocks(&rest) {
                for v in vs {
                    count[v] += 1;
                }
            }
            if let Some(b) = (0..rest.n()).find(|&v| count[v] > 1) {
                let b = if b >= a { b + 1 } else { b };
                return Some((a.min(b), a.max(b)));
            }
        }
    }
    None
}

/// Split a 2-connected piece along 2-separations until none is left.
fn split(piece: Piece, out: &mut Vec<Piece>) {
    let g = &piece.graph;
    if g.n() < 4 {
        return;
    }
    let Some((a, b)) = cut_pair(g) else {
        out.push(piece);
        return;
    };
    let mut removed = vec![false; g.n()];
    removed[a] = true;
    removed[b] = true;
    let comps = g.components_without(&removed);
    // host vertices reachable through each component, virtual edges included
    let reach: Vec<Vec<usize>> = comps
        .iter()
        .map(|c| {
            let mut hv: Vec<usize> = c.iter().map(|&x| piece.to_host[x]).collect();
            for ((x, y), inner) in &piece.virtual_edges {
                if c.contains(x) || c.contains(y) {
                    hv.extend(inner);
                }
            }
            hv
        })
        .collect();
    for (i, c) in comps.iter().enumerate() {
        let mut vs = c.clone();
        vs.push(a);
        vs.push(b);
        vs.sort_unstable();
        let (sub, map) = g.induced(&vs);
        let local = |x: usize| map.iter().position(|&y| y == x).unwrap();
        let mut virtual_edges: Vec<((usize, usize), Vec<usize>)> = piece
            .virtual_edges
            .iter()
            .filter(|((x, y), _)| vs.contains(x) && vs.contains(y))
            .map(|((x, y), inner)| ((local(*x), local(*y)), inner.clone()))
            .collect();
        let (la, lb) = (local(a), local(b));
        let sub = if g.has_edge(a, b) {
            sub
        } else {
            let j = (i + 1) % comps.len();
            virtual_edges.push(((la.min(lb), la.max(lb)), reach[j].clone()));
            sub.add_edge(la, lb).unwrap()
        };
        let to_host = map.iter().map(|&x| piece.to_host[x]).collect();
        split(Piece { graph: sub, to_host, virtual_edges }, out);
    }
}

/// 3-connected pieces (plus any small leftovers with ≥ 4 vertices).
pub(crate) fn three_connected_pieces(g: &Graph) -> Vec<Piece> {
    let mut out = Vec::new();
    for vs in vertex_sets_of_blocks(g) {
        if vs.len() < 4 {
            continue;
        }
        let (sub, map) = g.induced(&vs);
        split(Piece { graph: sub, to_host: map, virtual_edges: Vec::new() }, &mut out);
    }
    out
}

fn route_through(g: &Graph, from: usize, to: usize, allowed: &[usize]) -> Option<Vec<usize>> {
    let mut ok = vec![false; g.n()];
    for &x in allowed {
        ok[x] = true;
    }
    let mut parent = vec![usize::MAX; g.n()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if y == to && x != from {
                let mut path = vec![];
                let mut z = x;
                while z != from {
                    path.push(z);
                    z = parent[z];
                }
                return Some(path);
            }
            if ok[y] && parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Map a model in the piece back to the host.
pub(crate) fn lift(g: &Graph, piece: &Piece, m: &MinorModel) -> Option<MinorModel> {
    let mut owner = vec![usize::MAX; piece.graph.n()];
    for (p, s) in m.branch.iter().enumerate() {
        for &x in s {
            owner[x] = p;
        }
    }
    let mut out = m.mapped(&piece.to_host);
    for &((x, y), ref inner) in &piece.virtual_edges {
        if owner[x] == usize::MAX || owner[y] == usize::MAX {
            continue;
        }
        let path = route_through(g, piece.to_host[x], piece.to_host[y], inner)?;
        out.branch[owner[x]].extend(path);
    }
    Some(out)
}

/// `None` if no reduction applies.
pub(crate) fn by_pieces(h: &Graph, g: &Graph, opts: &MinorOptions) -> Result<Option<MinorAnswer>> {
    if h.n() < 3 || !is_k_connected(h, 2) {
        return Ok(None);
    }
    let three = h.n() >= 4 && is_k_connected(h, 3);
    let pieces: Vec<Piece> = if three {
        three_connected_pieces(g)
    } else {
        vertex_sets_of_blocks(g)
            .into_iter()
            .filter(|vs| vs.len() >= h.n())
            .map(|vs| {
                let (sub, map) = g.induced(&vs);
                Piece { graph: sub, to_host: map, virtual_edges: Vec::new() }
            })
            .collect()
    };
    if pieces.len() == 1 && pieces[0].graph.n() == g.n() && pieces[0].graph.m() == g.m() {
        if three && is_k33(h) && (planar(&pieces[0].graph) || is_complete(&pieces[0].graph) && pieces[0].graph.n() == 5) {
            return Ok(Some(MinorAnswer::Absent(AbsenceProof::Hall { pieces: 1 })));
        }
        return Ok(None);
    }
    if three && is_k33(h) && pieces.iter().all(|p| planar(&p.graph) || (p.graph.n() == 5 && is_complete(&p.graph))) {
        return Ok(Some(MinorAnswer::Absent(AbsenceProof::Hall { pieces: pieces.len() })));
    }
    let child = opts.child();
    for piece in &pieces {
        if piece.graph.n() < h.n() {
            continue;
        }
        match search(h, &piece.graph, &child, false)? {
            MinorAnswer::Found(m) => {
                let lifted = lift(g, piece, &m).ok_or_else(|| Error::Certificate("virtual edge could not be routed in the host".into()))?;
                return Ok(Some(MinorAnswer::Found(lifted)));
            }
            MinorAnswer::Absent(_) => {}
        }
    }
    Ok(Some(MinorAnswer::Absent(AbsenceProof::Pieces { pieces: pieces.len() })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete, graph_j};

    #[test]
    fn graph_j_splits_into_k5_and_k33() {
        let pieces = three_connected_pieces(&graph_j());
        let mut sizes: Vec<(usize, usize)> = pieces.iter().map(|p| (p.graph.n(), p.graph.m())).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![(5, 10), (6, 9)]);
    }

    #[test]
    fn k5_is_one_piece() {
        assert_eq!(three_connected_pieces(&complete(5)).len(), 1);
    }
}
