//! Claim operations. Each returns the computed value and, for property
//! operations, its own verdict.

use minorlab_core::embed::{embeds, genus_profile, verify_embedding, GenusOptions};
use minorlab_core::family::{canonical_embedding, complete, complete_bipartite, generate, growth_model, FamilySpec};
use minorlab_core::graph6::{decode_str, encode_string};
use minorlab_core::iso::isomorphic;
use minorlab_core::kuratowski::is_kuratowski_connected;
use minorlab_core::minor::{
    cover, ep_parameter, minor_search, pack, pack_value, verify_cover, verify_model, verify_packing, MinorAnswer, MinorOptions,
    PackKind, PackOutcome,
};
use minorlab_core::oracle::{self, mutation::mutation_suite};
use minorlab_core::surface::surfaces_excluding;
use minorlab_core::{Budget, ClosedSurfaceSet, Error, Graph, Surface};
use serde_json::{json, Value};

use crate::claims::Operation;
use crate::input::{parse_surface, resolve_all, GraphRef};
use crate::LabError;

pub struct Outcome {
    pub computed: Value,
    /// Set by property operations; value operations leave it to the expectation.
    pub verdict: Option<bool>,
}

fn value(computed: Value) -> Outcome {
    Outcome { computed, verdict: None }
}

fn property(computed: Value, ok: bool) -> Outcome {
    Outcome { computed, verdict: Some(ok) }
}

fn surfaces_json(s: &[Surface]) -> Value {
    let mut names: Vec<String> = s.iter().map(Surface::to_string).collect();
    names.sort();
    json!(names)
}

fn core(e: Error) -> LabError {
    LabError::Core(e)
}

fn options(budget: &Budget) -> MinorOptions<'_> {
    MinorOptions::new(budget)
}

/// The surface a generated host provably embeds in, from its canonical
/// embedding (verified, not trusted).
fn host_surface(host: &GraphRef) -> Option<Surface> {
    let GraphRef::Family(spec) = host else { return None };
    let g = generate(spec).ok()?;
    verify_embedding(&g.graph, g.canonical_embedding.as_ref()?).ok()
}

fn no_minor(h: &Graph, g: &Graph) -> minorlab_core::Result<bool> {
    Ok(minorlab_core::minor::is_minor(h, g, &Budget::default())?.is_none())
}

fn dyck(surface: &str, k: usize) -> Result<FamilySpec, LabError> {
    match parse_surface(surface)? {
        Surface::Standard { h, c } => Ok(FamilySpec::DyckGrid { k, h, c }),
        Surface::Empty => Err(LabError::Config("Dyck grids need a non-empty surface".into())),
    }
}

/// Closed-form order and size of the families that have one.
fn closed_form(spec: &FamilySpec) -> Option<(usize, usize)> {
    use FamilySpec::*;
    Some(match *spec {
        AnnulusGrid { k } => (4 * k * k, 4 * k * k + 4 * k * (k - 1)),
        CylGrid { n, m } => (n * m, n * m + n * (m - 1)),
        Grid { n, m } => (n * m, n * (m - 1) + m * (n - 1)),
        HandleGrid { k } | CrosscapGrid { k } => (4 * k * k, (2 * k - 1) * 4 * k + 2 * k),
        DyckGrid { k, h, c } => (4 * k * k * (1 + h + c), (2 * k - 1) * 4 * k * (1 + h + c) + 2 * k * (h + c)),
        ShallowVortexGrid { k } => (4 * k * k, (2 * k - 1) * 4 * k + 2 * k),
        MobiusLadder { order } => (order, 3 * order / 2),
        Complete { n } => (n, n * n.saturating_sub(1) / 2),
        CompleteBipartite { m, n } => (m + n, m * n),
        _ => return None,
    })
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// (γ, ~γ) of K_n; ~γ(K7) = 3 is the exception to the formula.
fn kn_genus(n: usize) -> (usize, usize) {
    let p = n.saturating_sub(3) * n.saturating_sub(4);
    (ceil_div(p, 12), if n == 7 { 3 } else { ceil_div(p, 6) })
}

fn kmn_genus(m: usize, n: usize) -> (usize, usize) {
    let p = m.saturating_sub(2) * n.saturating_sub(2);
    (ceil_div(p, 4), ceil_div(p, 2))
}

fn family_at(name: &str, k: usize) -> Result<FamilySpec, LabError> {
    let (base, hc) = name.split_once(':').unwrap_or((name, ""));
    let hc = || -> Result<(usize, usize), LabError> {
        match parse_surface(hc)? {
            Surface::Standard { h, c } => Ok((h, c)),
            Surface::Empty => Err(LabError::Config(format!("{name}: needs h,c"))),
        }
    };
    Ok(match base {
        "annulus" => FamilySpec::AnnulusGrid { k },
        "handle" => FamilySpec::HandleGrid { k },
        "crosscap" => FamilySpec::CrosscapGrid { k },
        "vortex" => FamilySpec::ShallowVortexGrid { k },
        "wall" => FamilySpec::Wall { k: k + 2 },
        "dyck" => {
            let (h, c) = hc()?;
            FamilySpec::DyckGrid { k, h, c }
        }
        "dyck_wall" => {
            let (h, c) = hc()?;
            FamilySpec::DyckWall { t: k, h, c }
        }
        other => return Err(LabError::Config(format!("unknown family {other:?}"))),
    })
}

pub fn execute(op: &Operation, budget: &Budget) -> Result<Outcome, LabError> {
    use Operation::*;
    Ok(match op {
        Sobs { members } => {
            let ms: Vec<Surface> = members.iter().map(|m| parse_surface(m)).collect::<Result<_, _>>()?;
            let set = ClosedSurfaceSet::from_members(&ms).map_err(|e| LabError::Config(e.to_string()))?;
            value(surfaces_json(set.sobs()))
        }
        SurfacesExcluding { z, eg_max } => {
            let set = surfaces_excluding(&resolve_all(z)?, *eg_max, budget).map_err(core)?;
            value(surfaces_json(set.sobs()))
        }
        Kc { graph } => {
            let r = is_kuratowski_connected(&graph.resolve()?).map_err(core)?;
            value(json!(r.kuratowski_connected))
        }
        Isomorphic { a, b } => value(json!(isomorphic(&a.resolve()?, &b.resolve()?).map_err(core)?)),
        FamilyCounts { families } => {
            let mut rows = Vec::new();
            let mut ok = true;
            for spec in families {
                let g = generate(spec).map_err(|e| LabError::Config(e.to_string()))?.graph;
                let want = closed_form(spec).ok_or_else(|| LabError::Config(format!("no closed form for {spec:?}")))?;
                ok &= (g.n(), g.m()) == want;
                rows.push(json!({"spec": spec, "n": g.n(), "m": g.m(), "formula": [want.0, want.1]}));
            }
            property(json!(rows), ok)
        }
        Graph6RoundTrip { families } => {
            let mut ok = true;
            for spec in families {
                let g = generate(spec).map_err(|e| LabError::Config(e.to_string()))?.graph;
                let back = decode_str(&encode_string(&g)).map_err(core)?;
                ok &= back.n() == g.n() && back.edges() == g.edges();
            }
            property(json!({"graphs": families.len()}), ok)
        }
        Minor { pattern, host } => {
            let (h, g) = (pattern.resolve()?, host.resolve()?);
            let mut opts = options(budget);
            opts.host_surface = host_surface(host);
            match minor_search(&h, &g, &opts).map_err(core)? {
                MinorAnswer::Found(m) => {
                    verify_model(&h, &g, &m).map_err(core)?;
                    value(json!({"found": true, "model": m}))
                }
                MinorAnswer::Absent(p) => value(json!({"found": false, "proof": p})),
            }
        }
        Pack { z, host, k, multiplicity, mixed } => {
            let (zs, g) = (resolve_all(z)?, host.resolve()?);
            let mut opts = options(budget);
            opts.host_surface = host_surface(host);
            let kind = if *mixed { PackKind::Mixed } else { PackKind::Single };
            match pack(&zs, &g, *k, *multiplicity, kind, &opts).map_err(core)? {
                PackOutcome::Found(cert) => {
                    verify_packing(&zs, &g, &cert).map_err(core)?;
                    value(json!({"found": true, "certificate": cert}))
                }
                PackOutcome::Absent { proofs } => value(json!({"found": false, "proofs": proofs})),
            }
        }
        PackValue { z, host, multiplicity } => {
            let (zs, g) = (resolve_all(z)?, host.resolve()?);
            let mut opts = options(budget);
            opts.host_surface = host_surface(host);
            let p = pack_value(&zs, &g, *multiplicity, PackKind::Single, &opts).map_err(core)?;
            verify_packing(&zs, &g, &p.certificate).map_err(core)?;
            value(json!({"value": p.value, "certificate": p.certificate, "upper": p.upper}))
        }
        PackBound { pattern, surfaces, ks } => {
            let h = pattern.resolve()?;
            let eg_h = genus_profile(&h, &GenusOptions::new(budget)).map_err(core)?.eg;
            let mut rows = Vec::new();
            let mut ok = true;
            for s in surfaces {
                let eg_s = parse_surface(s)?.eg().unwrap_or(0);
                let bound = (1 + eg_s).saturating_sub(eg_h);
                for &k in ks {
                    let spec = dyck(s, k)?;
                    let host = GraphRef::Family(spec.clone());
                    let g = host.resolve()?;
                    let mut opts = options(budget);
                    opts.host_surface = host_surface(&host);
                    let p = pack_value(std::slice::from_ref(&h), &g, 1, PackKind::Single, &opts).map_err(core)?;
                    verify_packing(std::slice::from_ref(&h), &g, &p.certificate).map_err(core)?;
                    ok &= p.value <= bound;
                    rows.push(json!({"surface": s, "k": k, "pack": p.value, "bound": bound, "certificate": p.certificate}));
                }
            }
            property(json!({"eg_pattern": eg_h, "rows": rows}), ok)
        }
        CoverGrowth { z, surface, ks } => {
            let zs = resolve_all(z)?;
            let mut rows = Vec::new();
            let mut ok = true;
            let mut last = 0;
            for &k in ks {
                let g = GraphRef::Family(dyck(surface, k)?).resolve()?;
                let opts = options(budget);
                let c = cover(&zs, &g, g.n(), &opts).map_err(core)?;
                verify_cover(&zs, &g, &c, no_minor).map_err(core)?;
                let has_model = zs.iter().any(|h| matches!(minor_search(h, &g, &opts), Ok(MinorAnswer::Found(_))));
                ok &= c.s.len() >= last && (!has_model || !c.s.is_empty());
                last = c.s.len();
                rows.push(json!({"k": k, "cover": c.s.len(), "s": c.s, "model_exists": has_model}));
            }
            property(json!(rows), ok)
        }
        Cover { z, host, cap } => {
            let (zs, g) = (resolve_all(z)?, host.resolve()?);
            let c = cover(&zs, &g, *cap, &options(budget)).map_err(core)?;
            verify_cover(&zs, &g, &c, no_minor).map_err(core)?;
            value(json!({"value": c.s.len(), "certificate": c}))
        }
        Ep { z, host, k_max } => {
            let (zs, g) = (resolve_all(z)?, host.resolve()?);
            let r = ep_parameter(&zs, &g, *k_max, &options(budget)).map_err(core)?;
            value(json!({"value": r.value, "surface": r.surface.map(|s| s.to_string()), "degenerate": r.degenerate}))
        }
        Genus { graph } => {
            let g = graph.resolve()?;
            let p = genus_profile(&g, &GenusOptions::new(budget)).map_err(core)?;
            value(json!({"eg": p.eg, "orientable_genus": p.orientable_genus, "nonorientable_genus": p.nonorientable_genus}))
        }
        Embeds { graph, surface } => {
            let g = graph.resolve()?;
            let w = embeds(&g, &parse_surface(surface)?, &GenusOptions::new(budget)).map_err(core)?;
            value(json!(w.is_some()))
        }
        Disk { graph, x } => value(json!(minorlab_core::embed::disk_embeddable(&graph.resolve()?, x).map_err(core)?)),
        GenusOracle { max_edges } => {
            let graphs = oracle::connected_graphs(*max_edges);
            let mut bad = Vec::new();
            for g in &graphs {
                let p = genus_profile(g, &GenusOptions::new(&Budget::unlimited())).map_err(core)?;
                let (eg, og, ng) = oracle::genus_brute(g);
                if (p.eg, p.orientable_genus, p.nonorientable_genus) != (eg, og, ng) && bad.len() < 10 {
                    bad.push(encode_string(g));
                }
            }
            property(json!({"graphs": graphs.len(), "disagreements": bad}), bad.is_empty())
        }
        GenusTables { max_complete, max_bipartite } => {
            let mut rows = Vec::new();
            let mut ok = true;
            let mut check = |name: String, g: Graph, (og, ng): (usize, usize)| -> Result<(), LabError> {
                let p = genus_profile(&g, &GenusOptions::new(&Budget::unlimited())).map_err(core)?;
                // forests embed in the projective plane at best
                let ng = ng.max(1);
                let hit = p.orientable_genus == og && p.nonorientable_genus == ng && p.eg == (2 * og).min(ng);
                ok &= hit;
                rows.push(json!({"graph": name, "genus": p.orientable_genus, "nonorientable_genus": p.nonorientable_genus, "table": [og, ng]}));
                Ok(())
            };
            for n in 1..=*max_complete {
                check(format!("K{n}"), complete(n), kn_genus(n))?;
            }
            for m in 1..=*max_bipartite {
                for n in m..=*max_bipartite {
                    check(format!("K{m},{n}"), complete_bipartite(m, n), kmn_genus(m, n))?;
                }
            }
            property(json!(rows), ok)
        }
        MinorOracle { seed, count } => {
            let mut bad = Vec::new();
            let corpus = oracle::minor_corpus(*seed, *count);
            for (i, (h, g)) in corpus.iter().enumerate() {
                let got = minorlab_core::minor::is_minor(h, g, &Budget::default()).map_err(core)?;
                if let Some(m) = &got {
                    verify_model(h, g, m).map_err(core)?;
                }
                if got.is_some() != oracle::naive_minor(h, g) {
                    bad.push(i);
                }
            }
            property(json!({"instances": corpus.len(), "disagreements": bad}), bad.is_empty())
        }
        DualityChain { seed, count, patterns } => duality_chain(*seed, *count, &resolve_all(patterns)?)?,
        ApexEquivalence { max_edges, max_union_n } => {
            let r = oracle::apex_equivalence(*max_edges, *max_union_n).map_err(core)?;
            let ok = r.disagreements.is_empty();
            property(json!(r), ok)
        }
        GenusAdditivity { seed, count } => {
            let r = oracle::genus_additivity(*seed, *count, budget).map_err(core)?;
            let ok = r.disagreements.is_empty() && r.unions == *count;
            property(json!(r), ok)
        }
        CoreNesting { max_n } => {
            let (mut graphs, mut pairs, mut nested, mut violations, mut crossing) = (0, 0, 0, Vec::new(), 0);
            for (name, g) in oracle::kuratowski_corpus() {
                if g.n() > *max_n || !g.is_connected() || minorlab_core::embed::planar(&g) {
                    continue;
                }
                if !is_kuratowski_connected(&g).map_err(core)?.kuratowski_connected {
                    continue;
                }
                let r = oracle::core_nesting(&g).map_err(core)?;
                graphs += 1;
                pairs += r.pairs;
                nested += r.nested_pairs;
                crossing += r.crossing_violations.len();
                violations.extend(r.nested_violations.into_iter().map(|v| format!("{name}: {v}")));
            }
            let ok = violations.is_empty() && nested > 0;
            property(
                json!({"graphs": graphs, "pairs": pairs, "nested_pairs": nested, "nested_violations": violations, "crossing_counterexamples": crossing}),
                ok,
            )
        }
        CertificateMutations { seed, count } => {
            let reports = mutation_suite(*seed, *count).map_err(core)?;
            let ok = reports.iter().all(|r| r.passed(*count));
            property(json!(reports), ok)
        }
        CanonicalEmbeddings { ks, max_hc } => {
            let mut rows = Vec::new();
            let mut ok = true;
            for &k in ks {
                for h in 0..=*max_hc {
                    for c in 0..=(*max_hc - h).min(2) {
                        let spec = FamilySpec::DyckGrid { k, h, c };
                        let g = generate(&spec).map_err(core)?.graph;
                        let s = verify_embedding(&g, &canonical_embedding(&spec).map_err(core)?).map_err(core)?;
                        let want = Surface::normalize(h, c);
                        ok &= s == want;
                        rows.push(json!({"k": k, "h": h, "c": c, "surface": s.to_string(), "expected": want.to_string()}));
                    }
                }
            }
            property(json!(rows), ok)
        }
        DyckCycleLengths { ks, max_hc } => {
            let mut rows = Vec::new();
            let (mut ok, mut discrepancies) = (true, 0);
            for &k in ks {
                for h in 0..=*max_hc {
                    for c in 0..=(*max_hc - h).min(2) {
                        if h + c == 0 {
                            continue;
                        }
                        let grid = generate(&FamilySpec::DyckGrid { k, h, c }).map_err(core)?;
                        let simple = grid.tags.vertices["simple_cycle"].len();
                        let exc = grid.tags.vertices.get("exceptional_face").map_or(0, Vec::len);
                        ok &= simple == 4 * k * (1 + h + c) && exc == 4 * (2 * h + c) + 4 * k;
                        let wall = generate(&FamilySpec::DyckWall { t: k, h, c }).map_err(core)?;
                        let wexc = wall.tags.vertices.get("exceptional_face").map_or(0, Vec::len);
                        let wall_formula = 6 * (2 * h + c) + 8 * k;
                        discrepancies += usize::from(wexc != wall_formula);
                        rows.push(json!({
                            "k": k, "h": h, "c": c,
                            "grid_simple": [simple, 4 * k * (1 + h + c)],
                            "grid_exceptional": [exc, 4 * (2 * h + c) + 4 * k],
                            "wall_exceptional": [wexc, wall_formula],
                        }));
                    }
                }
            }
            property(json!({"rows": rows, "wall_discrepancies": discrepancies}), ok)
        }
        Monotone { families, ks } => {
            let mut rows = Vec::new();
            let mut ok = true;
            for name in families {
                for (i, &k) in ks.iter().enumerate() {
                    for &k2 in &ks[i + 1..] {
                        let (a, b) = (family_at(name, k)?, family_at(name, k2)?);
                        let (ga, gb) = (generate(&a).map_err(core)?.graph, generate(&b).map_err(core)?.graph);
                        let mut opts = options(budget);
                        opts.hints.extend(growth_model(&a, &b));
                        let found = match minor_search(&ga, &gb, &opts).map_err(core)? {
                            MinorAnswer::Found(m) => verify_model(&ga, &gb, &m).is_ok(),
                            MinorAnswer::Absent(_) => false,
                        };
                        ok &= found;
                        rows.push(json!({"family": name, "k": k, "k2": k2, "minor": found}));
                    }
                }
            }
            property(json!(rows), ok)
        }
    })
}

fn duality_chain(seed: u64, count: usize, patterns: &[Graph]) -> Result<Outcome, LabError> {
    let mut hosts: Vec<Graph> = Vec::new();
    for (_, g) in oracle::minor_corpus(seed, count) {
        hosts.push(g);
    }
    let (mut computed, mut skipped, mut bad) = (0, 0, Vec::new());
    for g in &hosts {
        for h in patterns {
            let budget = Budget::default();
            let opts = options(&budget);
            let z = std::slice::from_ref(h);
            let chain = (|| -> minorlab_core::Result<(usize, usize, usize)> {
                let p = pack_value(z, g, 1, PackKind::Single, &opts)?;
                let half = pack_value(z, g, 2, PackKind::Single, &opts)?;
                let c = cover(z, g, g.n(), &opts)?;
                verify_packing(z, g, &p.certificate)?;
                verify_packing(z, g, &half.certificate)?;
                verify_cover(z, g, &c, no_minor)?;
                Ok((p.value, half.value, c.s.len()))
            })();
            match chain {
                Ok((p, half, c)) => {
                    computed += 1;
                    if !(p <= half && half <= 2 * c) {
                        bad.push(json!({"host": encode_string(g), "pattern": encode_string(h), "pack": p, "half": half, "cover": c}));
                    }
                }
                Err(Error::Refused(_)) => skipped += 1,
                Err(e) => return Err(core(e)),
            }
        }
    }
    let ok = bad.is_empty() && computed > 0;
    Ok(property(json!({"computed": computed, "refused": skipped, "violations": bad}), ok))
}
