//! Heuristics that only ever answer "found": label-guided repair and a
//! penalty-based routing search in the style of minorminer (Cai, Macready
//! and Roy). Results still go through the verifier.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{verify_model, MinorModel};
use crate::budget::Budget;
use crate::error::Refusal;
use crate::graph::Graph;

/// Seed each pattern vertex on the host vertex with the same label, then
/// route every missing pattern edge along a shortest path through unused
/// host vertices, absorbing the path into one end.
pub(crate) fn label_repair(h: &Graph, g: &Graph, budget: &Budget) -> Result<Option<MinorModel>, Refusal> {
    let (Some(hl), Some(_)) = (h.labels(), g.labels()) else { return Ok(None) };
    let mut seeds = Vec::with_capacity(h.n());
    for l in hl {
        let Some(x) = g.find_label(l) else { return Ok(None) };
        seeds.push(x);
    }
    repair(h, g, &seeds, budget)
}

fn repair(h: &Graph, g: &Graph, seeds: &[usize], budget: &Budget) -> Result<Option<MinorModel>, Refusal> {
    let mut owner = vec![usize::MAX; g.n()];
    let mut sets = Vec::with_capacity(h.n());
    for (p, &x) in seeds.iter().enumerate() {
        if owner[x] != usize::MAX {
            return Ok(None);
        }
        owner[x] = p;
        sets.push(vec![x]);
    }
    for (p, q) in h.edges() {
        budget.charge(g.n() as u64)?;
        if sets[p].iter().any(|&x| g.neighbors(x).iter().any(|&y| owner[y] == q)) {
            continue;
        }
        // BFS from p's set through free vertices until touching q's set
        let mut parent = vec![usize::MAX; g.n()];
        let mut queue: VecDeque<usize> = sets[p].iter().copied().collect();
        for &x in &sets[p] {
            parent[x] = x;
        }
        let mut hit = None;
        'bfs: while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if owner[y] == q {
                    hit = Some(x);
                    break 'bfs;
                }
                if owner[y] == usize::MAX && parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let Some(mut x) = hit else { return Ok(None) };
        while owner[x] != p {
            owner[x] = p;
            sets[p].push(x);
            x = parent[x];
        }
    }
    let m = MinorModel { branch: sets };
    Ok(verify_model(h, g, &m).is_ok().then_some(m))
}

struct Router<'a> {
    h: &'a Graph,
    g: &'a Graph,
    sets: Vec<Vec<usize>>,
    usage: Vec<u32>,
    rng: ChaCha8Rng,
    budget: &'a Budget,
}

impl Router<'_> {
    fn weight(&self, x: usize, alpha: f64) -> f64 {
        alpha.powi(self.usage[x] as i32)
    }

    /// Vertex-weighted distances from the set of `q`, with parents.
    fn dijkstra(&self, q: usize, alpha: f64) -> (Vec<f64>, Vec<usize>) {
        let n = self.g.n();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent = vec![usize::MAX; n];
        let mut inside = vec![false; n];
        for &s in &self.sets[q] {
            inside[s] = true;
        }
        let mut heap = BinaryHeap::new();
        let key = |d: f64| Reverse((d * 1e6) as u64);
        for &s in &self.sets[q] {
            for &y in self.g.neighbors(s) {
                if !inside[y] {
                    let d = self.weight(y, alpha);
                    if d < dist[y] {
                        dist[y] = d;
                        parent[y] = s;
                        heap.push((key(d), y));
                    }
                }
            }
        }
        while let Some((Reverse(k), x)) = heap.pop() {
            if k > (dist[x] * 1e6) as u64 {
                continue;
            }
            for &y in self.g.neighbors(x) {
                if inside[y] {
                    continue;
                }
                let d = dist[x] + self.weight(y, alpha);
                if d < dist[y] {
                    dist[y] = d;
                    parent[y] = x;
                    heap.push((key(d), y));
                }
            }
        }
        (dist, parent)
    }

    fn tear_up(&mut self, p: usize) {
        for &x in &self.sets[p] {
            self.usage[x] -= 1;
        }
        self.sets[p].clear();
    }

    fn place(&mut self, p: usize, alpha: f64) -> Result<(), Refusal> {
        self.budget.charge(1 + (self.h.degree(p) * self.g.n()) as u64)?;
        let placed: Vec<usize> = self.h.neighbors(p).iter().copied().filter(|&q| !self.sets[q].is_empty()).collect();
        let n = self.g.n();
        let set = if placed.is_empty() {
            let best = (0..n).map(|x| (self.usage[x], Reverse(self.g.degree(x) >= self.h.degree(p)))).min().unwrap();
            let cands: Vec<usize> = (0..n).filter(|&x| (self.usage[x], Reverse(self.g.degree(x) >= self.h.degree(p))) == best).collect();
            vec![*cands.choose(&mut self.rng).unwrap()]
        } else {
            let runs: Vec<(Vec<f64>, Vec<usize>)> = placed.iter().map(|&q| self.dijkstra(q, alpha)).collect();
            let mut best = f64::INFINITY;
            let mut roots = Vec::new();
            for x in 0..n {
                let w = self.weight(x, alpha);
                let mut c = 0.0;
                for (d, _) in &runs {
                    c += d[x] - w;
                }
                c += w;
                if c < best - 1e-9 {
                    best = c;
                    roots.clear();
                    roots.push(x);
                } else if (c - best).abs() <= 1e-9 {
                    roots.push(x);
                }
            }
            if !best.is_finite() {
                return Ok(());
            }
            let root = *roots.choose(&mut self.rng).unwrap();
            let mut set = vec![root];
            for (i, (_, parent)) in runs.iter().enumerate() {
                let q = placed[i];
                let mut x = root;
                while !self.sets[q].contains(&parent[x]) {
                    x = parent[x];
                    set.push(x);
                }
            }
            set.sort_unstable();
            set.dedup();
            set
        };
        for &x in &set {
            self.usage[x] += 1;
        }
        self.sets[p] = set;
        Ok(())
    }

    fn valid(&self) -> bool {
        self.usage.iter().all(|&u| u <= 1) && self.sets.iter().all(|s| !s.is_empty())
    }
}

fn bfs_order(h: &Graph) -> Vec<usize> {
    let mut seen = vec![false; h.n()];
    let mut by_degree: Vec<usize> = (0..h.n()).collect();
    by_degree.sort_by_key(|&v| (Reverse(h.degree(v)), v));
    let mut order = Vec::with_capacity(h.n());
    for s in by_degree {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in h.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// Drop branch-set vertices that are not needed for connectivity or for
/// realizing a pattern edge.
fn trim(h: &Graph, g: &Graph, m: &mut MinorModel) {
    loop {
        let mut changed = false;
        for p in 0..h.n() {
            let set = m.branch[p].clone();
            if set.len() == 1 {
                continue;
            }
            for &x in set.iter().rev() {
                let mut trial = m.clone();
                trial.branch[p].retain(|&y| y != x);
                if verify_model(h, g, &trial).is_ok() {
                    *m = trial;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn polish(h: &Graph, g: &Graph, router: &mut Router, order: &[usize], passes: usize) -> Result<Option<MinorModel>, Refusal> {
    let mut alpha = 2.0_f64;
    for pass in 0..passes {
        if router.valid() {
            let mut m = MinorModel { branch: router.sets.clone() };
            if verify_model(h, g, &m).is_ok() {
                if g.n() <= 200 {
                    trim(h, g, &mut m);
                }
                return Ok(Some(m));
            }
        }
        alpha = (alpha * 1.5).min(g.n() as f64 + 2.0);
        let mut ord = order.to_vec();
        if pass > 0 {
            ord.shuffle(&mut router.rng);
        }
        for p in ord {
            router.tear_up(p);
            router.place(p, alpha)?;
        }
        if router.rng.gen_bool(0.1) {
            alpha = 2.0;
        }
    }
    Ok(None)
}

fn router<'a>(h: &'a Graph, g: &'a Graph, seed: u64, budget: &'a Budget) -> Router<'a> {
    Router { h, g, sets: vec![Vec::new(); h.n()], usage: vec![0; g.n()], rng: ChaCha8Rng::seed_from_u64(seed), budget }
}

/// Penalty routing with `restarts` independent seeds.
pub(crate) fn route(h: &Graph, g: &Graph, restarts: usize, seed: u64, budget: &Budget) -> Result<Option<MinorModel>, Refusal> {
    let order = bfs_order(h);
    let passes = 8 + 2 * h.n();
    for r in 0..restarts {
        let mut router = router(h, g, seed.wrapping_add(r as u64 * 0x9e37_79b9), budget);
        for &p in &order {
            router.place(p, 2.0)?;
        }
        if let Some(m) = polish(h, g, &mut router, &order, passes)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn coordinates(g: &Graph) -> Option<Vec<Vec<i64>>> {
    g.labels()?.iter().map(|l| l.split(',').map(|t| t.trim().parse().ok()).collect()).collect()
}

/// Initial branch vertices for coordinate-labelled graphs ("i,j,..."):
/// each pattern coordinate is rescaled to the host's coordinate range and
/// matched to the nearest host label.
fn coordinate_seeds(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    let (hc, gc) = (coordinates(h)?, coordinates(g)?);
    let dim = hc.first()?.len();
    if dim == 0 || hc.iter().chain(&gc).any(|c| c.len() != dim) {
        return None;
    }
    let range = |cs: &[Vec<i64>], d: usize| {
        let it = cs.iter().map(|c| c[d]);
        (it.clone().min().unwrap(), it.max().unwrap())
    };
    let mut seeds = Vec::with_capacity(h.n());
    for c in &hc {
        let target: Vec<f64> = (0..dim)
            .map(|d| {
                let ((a, b), (x, y)) = (range(&hc, d), range(&gc, d));
                if a == b {
                    x as f64
                } else {
                    x as f64 + (c[d] - a) as f64 * (y - x) as f64 / (b - a) as f64
                }
            })
            .collect();
        let best = (0..g.n())
            .min_by(|&u, &v| {
                let dist = |w: usize| gc[w].iter().zip(&target).zip(c).map(|((&a, &t), &o)| (a as f64 - t).abs() + if (a - o) % 2 == 0 { 0.0 } else { 0.75 }).sum::<f64>();
                dist(u).total_cmp(&dist(v)).then(u.cmp(&v))
            })
            .unwrap();
        seeds.push(best);
    }
    Some(seeds)
}

/// Penalty routing started from coordinate seeds, for labelled grids.
pub(crate) fn route_by_coordinates(h: &Graph, g: &Graph, restarts: usize, seed: u64, budget: &Budget) -> Result<Option<MinorModel>, Refusal> {
    let Some(seeds) = coordinate_seeds(h, g) else { return Ok(None) };
    if let Some(m) = repair(h, g, &seeds, budget)? {
        return Ok(Some(m));
    }
    let order = bfs_order(h);
    let passes = 8 + 2 * h.n();
    for r in 0..restarts {
        let mut router = router(h, g, seed.wrapping_add(r as u64 * 0x51_7cc1), budget);
        for (p, &x) in seeds.iter().enumerate() {
            router.sets[p] = vec![x];
            router.usage[x] += 1;
        }
        if let Some(m) = polish(h, g, &mut router, &order, passes)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
