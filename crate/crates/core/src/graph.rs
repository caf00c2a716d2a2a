use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted, so two graphs with the same edge set and
/// labels compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n(), edges: g.edges(), labels: g.labels }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        let g = Graph::build(r.n, &r.edges)?;
        match r.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], labels: None }
    }

    /// Validated construction; duplicate pairs collapse to one edge.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj, labels: None })
    }

    pub(crate) fn from_adj_unchecked(mut adj: Vec<Vec<usize>>) -> Graph {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj, labels: None }
    }

    /// Attach per-vertex labels; they must be unique and one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::Labels(format!("{} labels for {} vertices", labels.len(), self.n())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Labels(format!("duplicate label {l:?}")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Graph {
        self.labels = None;
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Vertex carrying the given label, if any.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange { v, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        let mut g = self.clone();
        if !g.has_edge(u, v) {
            g.adj[u].push(v);
            g.adj[u].sort_unstable();
            g.adj[v].push(u);
            g.adj[v].sort_unstable();
        }
        Ok(g)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        g.adj[u].retain(|&w| w != v);
        g.adj[v].retain(|&w| w != u);
        Ok(g)
    }

    /// Add a vertex adjacent to `nbrs`; it receives index `n`.
    pub fn add_vertex(&self, nbrs: &[usize]) -> Result<Graph> {
        for &v in nbrs {
            self.check_vertex(v)?;
        }
        let mut g = self.clone();
        let x = g.n();
        g.adj.push(Vec::new());
        for &v in nbrs {
            if !g.adj[x].contains(&v) {
                g.adj[x].push(v);
                g.adj[v].push(x);
            }
        }
        g.adj[x].sort_unstable();
        if let Some(labels) = &mut g.labels {
            let mut name = format!("x{x}");
            while labels.contains(&name) {
                name.push('\'');
            }
            labels.push(name);
        }
        Ok(g)
    }

    /// Delete a vertex set. Survivors keep their relative order and labels.
    pub fn delete_vertices(&self, del: &[usize]) -> Result<Graph> {
        let mut dead = vec![false; self.n()];
        for &v in del {
            self.check_vertex(v)?;
            dead[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !dead[v]).collect();
        Ok(self.induced(&keep).0)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.delete_vertices(&[v])
    }

    /// Induced subgraph on `vs` (in the given order); also returns the map
    /// new index -> old index.
    pub fn induced(&self, vs: &[usize]) -> (Graph, Vec<usize>) {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let adj = vs
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| pos[w] != usize::MAX).map(|&w| pos[w]).collect())
            .collect();
        let mut g = Graph::from_adj_unchecked(adj);
        g.labels = self.labels.as_ref().map(|l| vs.iter().map(|&v| l[v].clone()).collect());
        (g, vs.to_vec())
    }

    /// Contract edge `uv`. The merged vertex takes index `min(u, v)`; every
    /// index above `max(u, v)` shifts down by one. Labels are dropped.
    pub fn contract(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let remap = |w: usize| if w == gone { keep } else if w > gone { w - 1 } else { w };
        let mut adj = vec![Vec::new(); self.n() - 1];
        for (a, list) in self.adj.iter().enumerate() {
            for &b in list {
                let (ra, rb) = (remap(a), remap(b));
                if ra != rb {
                    adj[ra].push(rb);
                }
            }
        }
        Ok(Graph::from_adj_unchecked(adj))
    }

    /// Connected components, each sorted, listed by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &y in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Components of the graph with `removed` deleted, in original indices.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut members = vec![s];
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first distances from `s` (usize::MAX if unreachable).
    pub fn bfs_distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        dist
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&w| w + off).collect()));
        Graph { adj, labels: None }
    }

    /// `k` disjoint copies.
    pub fn copies(&self, k: usize) -> Graph {
        let mut g = Graph::empty(0);
        for _ in 0..k {
            g = g.disjoint_union(self);
        }
        g
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n() {
            let mut dist = vec![usize::MAX; self.n()];
            let mut parent = vec![usize::MAX; self.n()];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        q.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Biconnected blocks as edge lists (bridges are single-edge blocks).
    /// Isolated vertices belong to no block.
    pub fn blocks(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut time = 0;
        let mut stack: Vec<(usize, usize)> = Vec::new();
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            // frames: (vertex, parent, next neighbour index)
            let mut frames = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (v, parent, ref mut next)) = frames.last_mut() {
                if *next < self.adj[v].len() {
                    let w = self.adj[v][*next];
                    *next += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        stack.push((v, w));
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        frames.push((w, v, 0));
                    } else if disc[w] < disc[v] {
                        stack.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(p, _, _)) = frames.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            let mut block = Vec::new();
                            while let Some((a, b)) = stack.pop() {
                                block.push((a.min(b), a.max(b)));
                                if (a, b) == (p, v) {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            out.push(block);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Check that `cyc` lists the vertices of a cycle of this graph in order.
    pub fn check_cycle(&self, cyc: &[usize]) -> Result<()> {
        if cyc.len() < 3 {
            return Err(Error::NotACycle(format!("{} vertices", cyc.len())));
        }
        let distinct: BTreeSet<_> = cyc.iter().collect();
        if distinct.len() != cyc.len() {
            return Err(Error::NotACycle("repeated vertex".into()));
        }
        for i in 0..cyc.len() {
            let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            if a >= self.n() || b >= self.n() || !self.has_edge(a, b) {
                return Err(Error::NotACycle(format!("{a}-{b} is not an edge")));
            }
        }
        Ok(())
    }

    /// DOT text; labels become node attributes.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n() {
            match self.label(v) {
                Some(l) => writeln!(s, "  {v} [label=\"{}\"];", l.replace('"', "\\\"")).unwrap(),
                None => writeln!(s, "  {v};").unwrap(),
            }
        }
        for (u, v) in self.edges() {
            writeln!(s, "  {u} -- {v};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// Edge-list text: vertex count on the first line, then one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("vertex count: {e}")))?;
        let mut edges = Vec::new();
        for (i, line) in lines.enumerate() {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("edge line {}: expected two integers", i + 2)));
            }
            let p = |s: &str| s.parse::<usize>().map_err(|e| Error::Parse(format!("edge line {}: {e}", i + 2)));
            edges.push((p(parts[0])?, p(parts[1])?));
        }
        Graph::build(n, &edges)
    }
}

/// A graph with an ordered boundary of distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundariedGraph {
    pub graph: Graph,
    pub boundary: Vec<usize>,
}

impl BoundariedGraph {
    pub fn new(graph: Graph, boundary: Vec<usize>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &b in &boundary {
            if b >= graph.n() {
                return Err(Error::Boundary(format!("vertex {b} not in graph")));
            }
            if !seen.insert(b) {
                return Err(Error::Boundary(format!("vertex {b} repeated")));
            }
        }
        Ok(BoundariedGraph { graph, boundary })
    }
}

/// `g1 ⊕ g2`: disjoint union with the i-th boundary vertices identified.
///
/// The vertices of `g1` keep their indices; the non-boundary vertices of
/// `g2` follow in increasing order.
pub fn glue(g1: &BoundariedGraph, g2: &BoundariedGraph) -> Result<Graph> {
    if g1.boundary.len() != g2.boundary.len() {
        return Err(Error::IncompatibleBoundary(g1.boundary.len(), g2.boundary.len()));
    }
    let n1 = g1.graph.n();
    let mut map = vec![usize::MAX; g2.graph.n()];
    for (i, &b) in g2.boundary.iter().enumerate() {
        map[b] = g1.boundary[i];
    }
    let mut next = n1;
    for slot in map.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = g1.graph.edges();
    edges.extend(g2.graph.edges().into_iter().map(|(u, v)| (map[u], map[v])));
    Graph::build(next, &edges)
}

/// Ordered pair (A, B) with A ∪ B = V(G) and no edge between A∖B and B∖A.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Separation {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Separation {
    pub fn new(g: &Graph, a: &[usize], b: &[usize]) -> Result<Separation> {
        let mut ina = vec![false; g.n()];
        let mut inb = vec![false; g.n()];
        for (set, flags) in [(a, &mut ina), (b, &mut inb)] {
            for &v in set {
                if v >= g.n() {
                    return Err(Error::Separation(format!("vertex {v} not in graph")));
                }
                flags[v] = true;
            }
        }
        if let Some(v) = (0..g.n()).find(|&v| !ina[v] && !inb[v]) {
            return Err(Error::Separation(format!("vertex {v} in neither side")));
        }
        for (u, v) in g.edges() {
            let cross = |x: usize, y: usize| ina[x] && !inb[x] && inb[y] && !ina[y];
            if cross(u, v) || cross(v, u) {
                return Err(Error::Separation(format!("edge {u}-{v} crosses")));
            }
        }
        let collect = |f: &[bool]| (0..g.n()).filter(|&v| f[v]).collect::<Vec<_>>();
        Ok(Separation { a: collect(&ina), b: collect(&inb) })
    }

    pub fn separator(&self) -> Vec<usize> {
        self.a.iter().copied().filter(|v| self.b.binary_search(v).is_ok()).collect()
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    /// A∖B and B∖A are both non-empty.
    pub fn is_nontrivial(&self) -> bool {
        self.a.iter().any(|v| self.b.binary_search(v).is_err())
            && self.b.iter().any(|v| self.a.binary_search(v).is_err())
    }

    pub fn swapped(&self) -> Separation {
        Separation { a: self.b.clone(), b: self.a.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::build(n, &e).unwrap()
    }

    #[test]
    fn build_validates() {
        assert_eq!(k(3).m(), 3);
        assert_eq!(Graph::build(1, &[]).unwrap().n(), 1);
        assert_eq!(Graph::build(2, &[(0, 1), (1, 0)]).unwrap().m(), 1);
        assert_eq!(Graph::build(2, &[(0, 2)]), Err(Error::VertexOutOfRange { v: 2, n: 2 }));
        assert_eq!(Graph::build(2, &[(1, 1)]), Err(Error::Loop(1)));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(k(3).contract(0, 2).unwrap(), k(2));
        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.contract(0, 1).unwrap(), k(2));
        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.contract(1, 2).unwrap(), k(3));
        assert!(c4.contract(0, 2).is_err());
    }

    #[test]
    fn contraction_remaps_indices() {
        // path 0-1-2-3-4; contracting 1-3 is illegal, contracting 2-3 merges into 2
        let p = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = p.contract(3, 2).unwrap();
        assert_eq!(c.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn labels_survive_deletion_not_contraction() {
        let g = Graph::build(3, &[(0, 1), (1, 2)])
            .unwrap()
            .with_labels(vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let d = g.delete_vertex(0).unwrap();
        assert_eq!(d.labels().unwrap(), &["b".to_string(), "c".to_string()]);
        assert!(g.contract(0, 1).unwrap().labels().is_none());
        assert!(Graph::empty(2).with_labels(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn components_examples() {
        let g = k(3).disjoint_union(&k(2));
        let c = g.components();
        assert_eq!(c, vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(Graph::empty(0).components().is_empty());
        assert_eq!(Graph::empty(5).components().len(), 5);
    }

    #[test]
    fn glue_examples() {
        let a = BoundariedGraph::new(k(2), vec![1]).unwrap();
        let b = BoundariedGraph::new(k(2), vec![0]).unwrap();
        let p = glue(&a, &b).unwrap();
        assert_eq!((p.n(), p.m()), (3, 2));
        let e1 = BoundariedGraph::new(k(3), vec![]).unwrap();
        let e2 = BoundariedGraph::new(k(4), vec![]).unwrap();
        let u = glue(&e1, &e2).unwrap();
        assert_eq!((u.n(), u.m()), (7, 9));
        let bad = BoundariedGraph::new(k(3), vec![0, 1]).unwrap();
        assert_eq!(glue(&a, &bad), Err(Error::IncompatibleBoundary(1, 2)));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = k(4);
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(g.to_dot().contains("0 -- 1;"));
    }

    #[test]
    fn separation_checks() {
        let p = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let s = Separation::new(&p, &[0, 1], &[1, 2]).unwrap();
        assert_eq!(s.order(), 1);
        assert!(s.is_nontrivial());
        assert!(Separation::new(&p, &[0], &[1, 2]).is_err());
    }

    #[test]
    fn blocks_of_bowtie_with_tail() {
        // two triangles sharing vertex 2, plus a pendant edge 4-5
        let g = Graph::build(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let b = g.blocks();
        assert_eq!(b, vec![vec![(0, 1), (0, 2), (1, 2)], vec![(2, 3), (2, 4), (3, 4)], vec![(4, 5)]]);
        assert_eq!(k(5).blocks().len(), 1);
        assert!(Graph::empty(3).blocks().is_empty());
    }

    #[test]
    fn girth_values() {
        assert_eq!(k(4).girth(), Some(3));
        let c5 = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5.girth(), Some(5));
        assert_eq!(Graph::build(3, &[(0, 1), (1, 2)]).unwrap().girth(), None);
    }
}
