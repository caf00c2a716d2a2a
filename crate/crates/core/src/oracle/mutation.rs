//! Corrupted certificates. Each base certificate comes from a searcher, is
//! perturbed at random, and the perturbed copy is judged by a reference
//! checker written here; the production verifier must agree with the judge
//! on every mutant.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{face_count, minor_corpus, naive_minor, random_graph};
use crate::budget::Budget;
use crate::embed::{genus_profile, verify_embedding, Embedding, GenusOptions};
use crate::error::Result;
use crate::family::{complete, complete_bipartite};
use crate::graph::Graph;
use crate::minor::{
    cover, is_minor, minimize_host, pack_value, verify_cover, verify_expansion, verify_model, verify_packing, Expansion, MinorModel,
    MinorOptions, PackKind, PackingCert,
};
use crate::surface::Surface;

#[derive(Clone, Debug, Default, Serialize)]
pub struct MutationReport {
    pub verifier: String,
    /// Mutants the judge rejects, and how many of those the verifier rejects.
    pub invalid: usize,
    pub rejected: usize,
    /// Mutants that are still valid certificates, and how many the verifier accepts.
    pub valid: usize,
    pub accepted: usize,
    pub disagreements: Vec<String>,
}

impl MutationReport {
    pub fn passed(&self, want_invalid: usize) -> bool {
        self.invalid >= want_invalid && self.disagreements.is_empty()
    }

    fn record(&mut self, judged_ok: bool, verifier_ok: bool, what: impl FnOnce() -> String) {
        if judged_ok {
            self.valid += 1;
            self.accepted += usize::from(verifier_ok);
        } else {
            self.invalid += 1;
            self.rejected += usize::from(!verifier_ok);
        }
        if judged_ok != verifier_ok && self.disagreements.len() < 10 {
            self.disagreements.push(what());
        }
    }
}

fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().into_iter().collect()
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Connectivity by repeated relaxation over the edge list.
fn judge_connected(edges: &BTreeSet<(usize, usize)>, set: &BTreeSet<usize>) -> bool {
    let Some(&first) = set.iter().next() else { return false };
    let mut reach = BTreeSet::from([first]);
    loop {
        let before = reach.len();
        for &(u, v) in edges {
            if set.contains(&u) && set.contains(&v) && (reach.contains(&u) || reach.contains(&v)) {
                reach.insert(u);
                reach.insert(v);
            }
        }
        if reach.len() == before {
            return reach.len() == set.len();
        }
    }
}

fn judge_model(h: &Graph, g: &Graph, m: &MinorModel) -> bool {
    if m.branch.len() != h.n() {
        return false;
    }
    let edges = edge_set(g);
    let mut owner = BTreeMap::new();
    for (p, b) in m.branch.iter().enumerate() {
        let set: BTreeSet<usize> = b.iter().copied().collect();
        if set.len() != b.len() || set.is_empty() || set.iter().any(|&x| x >= g.n()) || !judge_connected(&edges, &set) {
            return false;
        }
        for x in set {
            if owner.insert(x, p).is_some() {
                return false;
            }
        }
    }
    h.edges().into_iter().all(|(p, q)| {
        edges.iter().any(|&(u, v)| {
            let (a, b) = (owner.get(&u), owner.get(&v));
            (a, b) == (Some(&p), Some(&q)) || (a, b) == (Some(&q), Some(&p))
        })
    })
}

fn judge_packing(z: &[Graph], g: &Graph, c: &PackingCert) -> bool {
    if !(1..=2).contains(&c.multiplicity) {
        return false;
    }
    let mut uses: BTreeMap<usize, u8> = BTreeMap::new();
    let mut seen = Vec::new();
    for host in &c.hosts {
        if host.pattern >= z.len() || !judge_model(&z[host.pattern], g, &host.model) {
            return false;
        }
        let set: BTreeSet<usize> = host.model.branch.iter().flatten().copied().collect();
        if seen.contains(&set) {
            return false;
        }
        for &x in &set {
            *uses.entry(x).or_default() += 1;
        }
        seen.push(set);
    }
    let single_ok = c.kind != PackKind::Single || c.hosts.windows(2).all(|w| w[0].pattern == w[1].pattern);
    single_ok && uses.values().all(|&u| u <= c.multiplicity)
}

fn judge_cover(z: &[Graph], g: &Graph, s: &[usize]) -> bool {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    if set.len() != s.len() || set.iter().any(|&x| x >= g.n()) {
        return false;
    }
    let keep: Vec<usize> = (0..g.n()).filter(|v| !set.contains(v)).collect();
    let rest = g.induced(&keep).0;
    z.iter().all(|h| !naive_minor(h, &rest))
}

fn judge_expansion(g: &Graph, x: &Expansion) -> bool {
    let vs: BTreeSet<usize> = x.vertices.iter().copied().collect();
    let edges: BTreeSet<(usize, usize)> = x.edges.iter().map(|&(u, v)| key(u, v)).collect();
    if edges.len() != x.edges.len() || vs.len() != x.vertices.len() {
        return false;
    }
    let host = edge_set(g);
    if edges.iter().any(|&(u, v)| u == v || !vs.contains(&u) || !vs.contains(&v) || !host.contains(&(u, v))) {
        return false;
    }
    vs.iter().all(|v| x.t.contains(v) || edges.iter().filter(|&&(a, b)| a == *v || b == *v).count() == 2)
}

/// Surface of a signed rotation system, or `None` if it is malformed.
fn judge_embedding(g: &Graph, e: &Embedding) -> Option<Surface> {
    if e.rotation.len() != g.n() {
        return None;
    }
    for (v, rot) in e.rotation.iter().enumerate() {
        let mut a = rot.clone();
        a.sort_unstable();
        let mut b = g.neighbors(v).to_vec();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    let host = edge_set(g);
    if e.twisted.iter().any(|t| !host.contains(t)) {
        return None;
    }
    if g.n() == 0 {
        return Some(Surface::Empty);
    }
    let comps = g.components().len() as isize;
    // an isolated vertex is a sphere with one face and no darts
    let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).count() as isize;
    let faces = face_count(&e.rotation, &e.twisted) as isize + isolated;
    let eg = (2 * comps - g.n() as isize + g.m() as isize - faces) as usize;
    // orientable iff some vertex flipping makes every edge positive
    let mut side = vec![None; g.n()];
    let mut orientable = true;
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                let want = side[x].unwrap() ^ e.twisted.contains(&key(x, y));
                match side[y] {
                    None => {
                        side[y] = Some(want);
                        stack.push(y);
                    }
                    Some(w) if w != want => orientable = false,
                    _ => {}
                }
            }
        }
    }
    if orientable {
        eg.is_multiple_of(2).then(|| Surface::orientable(eg / 2))
    } else {
        Some(Surface::nonorientable(eg))
    }
}

fn mutate_model(rng: &mut ChaCha8Rng, m: &MinorModel, n: usize) -> MinorModel {
    let mut m = m.clone();
    let k = m.branch.len();
    match rng.gen_range(0..7) {
        0 if k > 1 => {
            // move a vertex between branch sets
            let p = rng.gen_range(0..k);
            let q = (p + rng.gen_range(1..k)) % k;
            if let Some(i) = (!m.branch[p].is_empty()).then(|| rng.gen_range(0..m.branch[p].len())) {
                let x = m.branch[p].remove(i);
                m.branch[q].push(x);
            }
        }
        1 => {
            let p = rng.gen_range(0..k);
            if !m.branch[p].is_empty() {
                let i = rng.gen_range(0..m.branch[p].len());
                m.branch[p].remove(i);
            }
        }
        2 => {
            let p = rng.gen_range(0..k);
            m.branch[p].push(rng.gen_range(0..n));
        }
        3 => {
            let p = rng.gen_range(0..k);
            if !m.branch[p].is_empty() {
                let i = rng.gen_range(0..m.branch[p].len());
                m.branch[p][i] = rng.gen_range(0..n);
            }
        }
        4 => {
            m.branch.pop();
        }
        5 => m.branch.push(vec![rng.gen_range(0..n + 2)]),
        _ => {
            let p = rng.gen_range(0..k);
            m.branch[p].push(n + rng.gen_range(0..3));
        }
    }
    m
}

fn run(name: &str, want: usize, mut step: impl FnMut(&mut MutationReport)) -> MutationReport {
    let mut r = MutationReport { verifier: name.into(), ..Default::default() };
    let mut tries = 0;
    while r.invalid < want && tries < want * 50 {
        tries += 1;
        step(&mut r);
    }
    r
}

/// Mutation runs against the model, packing, cover, expansion and
/// embedding verifiers, stopping once `want` invalid mutants have been
/// judged for each.
pub fn mutation_suite(seed: u64, want: usize) -> Result<Vec<MutationReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = Budget::default();
    let opts = MinorOptions::new(&budget);

    let mut models = Vec::new();
    for (h, g) in minor_corpus(seed, 200) {
        if h.n() >= 2 {
            if let Some(m) = is_minor(&h, &g, &budget)? {
                models.push((h, g, m));
            }
        }
    }
    let mut out = Vec::new();
    out.push(run("verify_model", want, |r| {
        let (h, g, m) = models.choose(&mut rng).unwrap();
        let bad = mutate_model(&mut rng, m, g.n());
        r.record(judge_model(h, g, &bad), verify_model(h, g, &bad).is_ok(), || format!("{bad:?}"));
    }));

    let mut packings = Vec::new();
    let antichains = [vec![complete(3)], vec![complete(3), complete_bipartite(1, 3)]];
    while packings.len() < 30 {
        let g = random_graph(&mut rng, 8, 0.45);
        let z = antichains.choose(&mut rng).unwrap().clone();
        let (mult, kind) = if z.len() > 1 { (1, PackKind::Mixed) } else { (rng.gen_range(1..=2), PackKind::Single) };
        let p = pack_value(&z, &g, mult, kind, &opts)?;
        if p.value >= 1 {
            packings.push((z, g, p.certificate));
        }
    }
    out.push(run("verify_packing", want, |r| {
        let (z, g, c) = packings.choose(&mut rng).unwrap();
        let mut bad = c.clone();
        match rng.gen_range(0..5) {
            0 => {
                let i = rng.gen_range(0..bad.hosts.len());
                let patt = &z[bad.hosts[i].pattern];
                bad.hosts[i].model = mutate_model(&mut rng, &bad.hosts[i].model, g.n().max(patt.n()));
            }
            1 => bad.hosts.push(bad.hosts.choose(&mut rng).unwrap().clone()),
            2 => {
                let i = rng.gen_range(0..bad.hosts.len());
                bad.hosts[i].pattern = rng.gen_range(0..=z.len());
            }
            3 => bad.multiplicity = rng.gen_range(0..=3),
            _ => bad.kind = PackKind::Single,
        }
        r.record(judge_packing(z, g, &bad), verify_packing(z, g, &bad).is_ok(), || format!("{bad:?}"));
    }));

    let mut covers = Vec::new();
    while covers.len() < 20 {
        let n = rng.gen_range(5..=8);
        let g = random_graph(&mut rng, n, 0.55);
        let z = vec![complete(rng.gen_range(3..=4))];
        let c = cover(&z, &g, g.n(), &opts)?;
        if !c.s.is_empty() {
            covers.push((z, g, c));
        }
    }
    let no_minor = |h: &Graph, g: &Graph| Ok(is_minor(h, g, &Budget::default())?.is_none());
    out.push(run("verify_cover", want, |r| {
        let (z, g, c) = covers.choose(&mut rng).unwrap();
        let mut bad = c.clone();
        match rng.gen_range(0..5) {
            0 => {
                let i = rng.gen_range(0..bad.s.len());
                bad.s.remove(i);
            }
            1 => bad.s.push(*bad.s.choose(&mut rng).unwrap()),
            2 => bad.s.push(g.n() + rng.gen_range(0..3)),
            3 => {
                let i = rng.gen_range(0..bad.s.len());
                bad.s[i] = rng.gen_range(0..g.n());
            }
            _ => bad.s.push(rng.gen_range(0..g.n())),
        }
        let verdict = verify_cover(z, g, &bad, no_minor).is_ok();
        r.record(judge_cover(z, g, &bad.s), verdict, || format!("{:?} in {:?}", bad.s, g.edges()));
    }));

    let mut expansions = Vec::new();
    for (h, g, m) in &models {
        if h.m() > 0 {
            expansions.push((g.clone(), minimize_host(h, g, m)?));
        }
    }
    out.push(run("verify_expansion", want, |r| {
        let (g, x) = expansions.choose(&mut rng).unwrap();
        let mut bad = x.clone();
        let n = g.n();
        match rng.gen_range(0..6) {
            0 if !bad.edges.is_empty() => {
                let i = rng.gen_range(0..bad.edges.len());
                bad.edges.remove(i);
            }
            1 => {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if !bad.edges.contains(&key(u, v)) {
                    bad.edges.push(key(u, v));
                }
            }
            2 => {
                if let Some(&t) = bad.t.iter().collect::<Vec<_>>().choose(&mut rng) {
                    let t = *t;
                    bad.t.remove(&t);
                }
            }
            3 => bad.vertices.push(rng.gen_range(0..n)),
            4 => bad.edges.push(*bad.edges.first().unwrap_or(&(0, 1))),
            _ => {
                let v = rng.gen_range(0..bad.vertices.len());
                bad.vertices.remove(v);
            }
        }
        r.record(judge_expansion(g, &bad), verify_expansion(g, &bad).is_ok(), || format!("{bad:?}"));
    }));

    let gopts = GenusOptions::new(&budget);
    let mut embeddings = Vec::new();
    while embeddings.len() < 30 {
        let n = rng.gen_range(4..=7);
        let g = random_graph(&mut rng, n, 0.6);
        if g.m() >= 3 && g.m() <= 14 {
            let p = genus_profile(&g, &gopts)?;
            let s = verify_embedding(&g, &p.witness)?;
            embeddings.push((g, p.witness, s));
        }
    }
    let surfaces = Surface::all_up_to(4);
    out.push(run("verify_embedding", want, |r| {
        let (g, e, s) = embeddings.choose(&mut rng).unwrap();
        let (mut bad, mut claim) = (e.clone(), *s);
        let v = rng.gen_range(0..g.n());
        let d = bad.rotation[v].len();
        let edges = g.edges();
        match rng.gen_range(0..7) {
            0 if d >= 2 => {
                let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
                bad.rotation[v].swap(i, j);
            }
            1 if !edges.is_empty() => {
                let e = *edges.choose(&mut rng).unwrap();
                if !bad.twisted.remove(&e) {
                    bad.twisted.insert(e);
                }
            }
            2 => claim = *surfaces.choose(&mut rng).unwrap(),
            3 if d >= 1 => {
                bad.rotation[v].pop();
            }
            4 if d >= 1 => {
                let x = bad.rotation[v][0];
                bad.rotation[v].push(x);
            }
            5 if d >= 1 => bad.rotation[v][0] = rng.gen_range(0..g.n() + 1),
            _ => {
                let (a, b) = (rng.gen_range(0..g.n()), rng.gen_range(0..g.n()));
                bad.twisted.insert(key(a, b));
            }
        }
        let judged = judge_embedding(g, &bad) == Some(claim);
        let verdict = verify_embedding(g, &bad).ok() == Some(claim);
        r.record(judged, verdict, || format!("{bad:?} claimed {claim}"));
    }));
    Ok(out)
}
