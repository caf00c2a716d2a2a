//! Minimum covers by iterative deepening over hitting sets: any cover must
//! meet the vertex set of every model, so the search branches on the
//! vertices of one minimal model at a time. Models found anywhere in the
//! search are cached (as host vertex sets); a cached model disjoint from the
//! current partial cover is still a model, which saves a minor search and
//! gives a lower bound for the vertices still needed.

use super::{expansion::shorten_expansion, minimize_host, minor_search, AbsenceProof, CoverCert, MinorAnswer, MinorOptions};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::encode_string;

const RELAX_STEPS: usize = 20_000;

struct Search<'a, 'b> {
    z: &'a [Graph],
    g: &'a Graph,
    opts: &'a MinorOptions<'b>,
    cache: Vec<Vec<usize>>,
}

enum Probe {
    Clear(Vec<AbsenceProof>),
    Model(usize),
}

impl Search<'_, '_> {
    fn probe(&mut self, in_s: &[bool]) -> Result<Probe> {
        let keep: Vec<usize> = (0..self.g.n()).filter(|&v| !in_s[v]).collect();
        let (rest, map) = self.g.induced(&keep);
        let mut proofs = Vec::new();
        for h in self.z {
            match minor_search(h, &rest, self.opts)? {
                MinorAnswer::Absent(p) => proofs.push(p),
                MinorAnswer::Found(m) => {
                    let x = shorten_expansion(&rest, &minimize_host(h, &rest, &m)?);
                    self.cache.push(x.vertices.iter().map(|&v| map[v]).collect());
                    return Ok(Probe::Model(self.cache.len() - 1));
                }
            }
        }
        Ok(Probe::Clear(proofs))
    }

    /// Vertices still needed to hit the alive cached models, from below.
    fn lower_bound(&self, alive: &[usize]) -> usize {
        let mut used = vec![false; self.g.n()];
        let mut disjoint = 0;
        let mut order: Vec<usize> = alive.to_vec();
        order.sort_by_key(|&i| self.cache[i].len());
        for &i in &order {
            if self.cache[i].iter().all(|&v| !used[v]) {
                disjoint += 1;
                for &v in &self.cache[i] {
                    used[v] = true;
                }
            }
        }
        let mut hits = vec![0usize; self.g.n()];
        for &i in alive {
            for &v in &self.cache[i] {
                hits[v] += 1;
            }
        }
        let max_hit = hits.into_iter().max().unwrap_or(0).max(1);
        disjoint.max(alive.len().div_ceil(max_hit))
    }

    /// Relaxation: can the alive cached models be hit with `left` more
    /// vertices avoiding `kept`? Answers `true` when out of steps.
    fn hittable(&self, alive: &[usize], in_s: &mut [bool], kept: &mut [bool], left: usize, steps: &mut usize) -> bool {
        let open: Vec<usize> = alive.iter().copied().filter(|&i| self.cache[i].iter().all(|&v| !in_s[v])).collect();
        if open.is_empty() {
            return true;
        }
        if left == 0 || *steps == 0 {
            return *steps == 0 && left > 0;
        }
        *steps -= 1;
        let best = open.iter().copied().min_by_key(|&i| self.cache[i].iter().filter(|&&v| !kept[v]).count()).unwrap();
        let branch: Vec<usize> = self.cache[best].iter().copied().filter(|&v| !kept[v]).collect();
        let mut marked = Vec::new();
        let mut ok = false;
        for v in branch {
            in_s[v] = true;
            ok = self.hittable(&open, in_s, kept, left - 1, steps);
            in_s[v] = false;
            if ok {
                break;
            }
            kept[v] = true;
            marked.push(v);
        }
        for v in marked {
            kept[v] = false;
        }
        ok
    }

    fn rec(&mut self, in_s: &mut Vec<bool>, kept: &mut Vec<bool>, left: usize) -> Result<Option<(Vec<usize>, Vec<AbsenceProof>)>> {
        self.opts.budget.tick()?;
        let mut alive: Vec<usize> = (0..self.cache.len()).filter(|&i| self.cache[i].iter().all(|&v| !in_s[v])).collect();
        if alive.is_empty() {
            match self.probe(in_s)? {
                Probe::Clear(p) => return Ok(Some(((0..self.g.n()).filter(|&v| in_s[v]).collect(), p))),
                Probe::Model(i) => alive.push(i),
            }
        }
        if left == 0 || self.lower_bound(&alive) > left {
            return Ok(None);
        }
        let mut steps = RELAX_STEPS;
        if !self.hittable(&alive, in_s, kept, left, &mut steps) {
            return Ok(None);
        }
        let best = alive
            .iter()
            .copied()
            .min_by_key(|&i| self.cache[i].iter().filter(|&&v| !kept[v]).count())
            .unwrap();
        let mut branch: Vec<usize> = self.cache[best].iter().copied().filter(|&v| !kept[v]).collect();
        branch.sort_by_key(|&v| (std::cmp::Reverse(self.g.degree(v)), v));
        let mut marked = Vec::new();
        let mut result = None;
        for v in branch {
            in_s[v] = true;
            let r = self.rec(in_s, kept, left - 1)?;
            in_s[v] = false;
            if r.is_some() {
                result = r;
                break;
            }
            // later siblings keep v
            kept[v] = true;
            marked.push(v);
        }
        for v in marked {
            kept[v] = false;
        }
        Ok(result)
    }
}

/// Smallest `S` with `|S| <= cap` such that no member of `z` is a minor of
/// `G − S`. Refuses when no set up to `cap` works.
pub fn cover(z: &[Graph], g: &Graph, cap: usize, opts: &MinorOptions) -> Result<CoverCert> {
    if z.is_empty() {
        return Err(Error::Params("empty antichain".into()));
    }
    let mut search = Search { z, g, opts, cache: Vec::new() };
    for size in 0..=cap.min(g.n()) {
        let mut in_s = vec![false; g.n()];
        let mut kept = vec![false; g.n()];
        if let Some((s, attestation)) = search.rec(&mut in_s, &mut kept, size)? {
            return Ok(CoverCert { s, checked_against: z.iter().map(encode_string).collect(), attestation });
        }
    }
    Err(opts.budget.refusal(format!("no cover of size at most {cap}")).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::family::{complete, complete_bipartite, generate, FamilySpec};
    use crate::minor::{is_minor, verify_cover};

    fn no_minor(h: &Graph, g: &Graph) -> Result<bool> {
        Ok(is_minor(h, g, &Budget::default())?.is_none())
    }

    #[test]
    fn examples() {
        let b = Budget::default();
        let opts = MinorOptions::new(&b);
        let z = [complete(5)];
        let c = cover(&z, &complete(5), 5, &opts).unwrap();
        assert_eq!(c.s.len(), 1);
        verify_cover(&z, &complete(5), &c, no_minor).unwrap();
        let grid = generate(&FamilySpec::Grid { n: 4, m: 4 }).unwrap().graph;
        assert!(cover(&z, &grid, 3, &opts).unwrap().s.is_empty());
        let k6 = complete(6);
        let c = cover(&[complete_bipartite(3, 3)], &k6, 6, &opts).unwrap();
        verify_cover(&[complete_bipartite(3, 3)], &k6, &c, no_minor).unwrap();
        assert_eq!(c.s.len(), 1);
    }
}
