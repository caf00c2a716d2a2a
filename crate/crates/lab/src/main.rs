use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use minorlab_core::embed::{disk_embeddable, embeds, genus_profile, is_orientable, GenusOptions};
use minorlab_core::family::{generate, FamilySpec};
use minorlab_core::graph6::encode_string;
use minorlab_core::kuratowski::{core_component, is_kuratowski_connected};
use minorlab_core::minor::{cover, ep_parameter, minor_search, pack, MinorAnswer, MinorOptions, PackKind, PackOutcome};
use minorlab_core::surface::surfaces_excluding;
use minorlab_core::{Budget, ClosedSurfaceSet, Error, Graph, Separation, Surface};
use minorlab::input::{parse_surface, parse_surfaces, parse_vertices, read_graph, read_graphs};
use minorlab::{claims, exit_code, reports_csv, run_claims, LabError, Report, Status, BUDGET_ENV};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "minorlab", version, about = "Graph minors on surfaces: generators, genus, minors, packings and covers")]
struct Cli {
    /// Node budget per search
    #[arg(long, global = true, env = BUDGET_ENV)]
    budget: Option<u64>,
    /// Output format; each verb has its own default
    #[arg(long, global = true, value_enum)]
    emit: Option<Emit>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
    Dot,
    G6,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Annulus,
    Cyl,
    Grid,
    Handle,
    Crosscap,
    Dyck,
    Wall,
    DyckWall,
    Vortex,
    Ring,
    Mobius,
    Complete,
    Bipartite,
    PetersenFamily,
    J,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a family member
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        h: usize,
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Ring blowup base graph
        #[arg(long)]
        base: Option<String>,
        /// Ring blowup facial cycle, comma separated
        #[arg(long)]
        cycle: Option<String>,
        /// Petersen family index
        #[arg(long)]
        index: Option<usize>,
        /// Write substructure tags as JSON next to the output (or to tags.json)
        #[arg(long)]
        tags: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minor containment with a model or a proof of absence
    Minor {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
    },
    /// Packing of antichain models
    Pack {
        #[arg(long)]
        z: String,
        #[arg(long)]
        host: String,
        #[arg(long)]
        k: usize,
        /// Each vertex may be used twice
        #[arg(long)]
        half: bool,
        /// Hosts may realize different antichain members
        #[arg(long)]
        mixed: bool,
    },
    /// Smallest vertex set meeting every model
    Cover {
        #[arg(long)]
        z: String,
        #[arg(long)]
        host: String,
        #[arg(long)]
        cap: usize,
    },
    /// Largest Dyck grid of the antichain's surfaces contained as a minor
    Ep {
        #[arg(long)]
        z: String,
        #[arg(long)]
        host: String,
        #[arg(long)]
        kmax: usize,
    },
    /// Euler, orientable and non-orientable genus
    Genus {
        #[arg(long = "in")]
        input: String,
    },
    /// Embed in a given surface
    Embeds {
        #[arg(long = "in")]
        input: String,
        /// "h,c"
        #[arg(long)]
        surface: String,
    },
    /// Disk embeddability with the listed vertices on the boundary
    Disk {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value = "")]
        x: String,
    },
    /// Kuratowski-connectivity
    Kc {
        #[arg(long = "in")]
        input: String,
    },
    /// Core component of a separation
    Core {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Surface obstructions of an antichain, or of a closed surface set
    Sobs {
        #[arg(long, conflicts_with = "members")]
        z: Option<String>,
        /// Members of a closed surface set, e.g. "empty 0,0"
        #[arg(long)]
        members: Option<String>,
    },
    /// Run a claim suite
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Claim registry file to run instead of a built-in suite
        #[arg(long)]
        claims: Option<PathBuf>,
        /// Only claims whose id contains this
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = minorlab::default_workers())]
        workers: usize,
        /// Write the report here as well
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of one verb: what to print and the exit code.
struct Output {
    text: String,
    code: u8,
}

fn ok(text: String) -> Output {
    Output { text, code: 0 }
}

fn unsupported(emit: Emit) -> LabError {
    let name = emit.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    LabError::Config(format!("--emit {name} is not available for this verb"))
}

fn json_only(emit: Option<Emit>, v: Value) -> Result<Output, LabError> {
    match emit.unwrap_or(Emit::Json) {
        Emit::Json => Ok(ok(serde_json::to_string_pretty(&v).unwrap())),
        other => Err(unsupported(other)),
    }
}

fn core(e: Error) -> LabError {
    LabError::Core(e)
}

fn spec_of(family: Family, k: Option<usize>, h: usize, c: usize, n: Option<usize>, m: Option<usize>, base: Option<String>, cycle: Option<String>, index: Option<usize>) -> Result<FamilySpec, LabError> {
    let need = |x: Option<usize>, name: &str| x.ok_or_else(|| LabError::Config(format!("--{name} is required for this family")));
    Ok(match family {
        Family::Annulus => FamilySpec::AnnulusGrid { k: need(k, "k")? },
        Family::Cyl => FamilySpec::CylGrid { n: need(n, "n")?, m: need(m, "m")? },
        Family::Grid => FamilySpec::Grid { n: need(n, "n")?, m: need(m, "m")? },
        Family::Handle => FamilySpec::HandleGrid { k: need(k, "k")? },
        Family::Crosscap => FamilySpec::CrosscapGrid { k: need(k, "k")? },
        Family::Dyck => FamilySpec::DyckGrid { k: need(k, "k")?, h, c },
        Family::Wall => FamilySpec::Wall { k: need(k, "k")? },
        Family::DyckWall => FamilySpec::DyckWall { t: need(k, "k")?, h, c },
        Family::Vortex => FamilySpec::ShallowVortexGrid { k: need(k, "k")? },
        Family::Ring => FamilySpec::RingBlowup {
            base: base.ok_or_else(|| LabError::Config("--base is required".into()))?,
            cycle: parse_vertices(&cycle.ok_or_else(|| LabError::Config("--cycle is required".into()))?)?,
        },
        Family::Mobius => FamilySpec::MobiusLadder { order: need(n, "n")? },
        Family::Complete => FamilySpec::Complete { n: need(n, "n")? },
        Family::Bipartite => FamilySpec::CompleteBipartite { m: need(m, "m")?, n: need(n, "n")? },
        Family::PetersenFamily => FamilySpec::PetersenFamily { index: need(index, "index")? },
        Family::J => FamilySpec::GraphJ,
    })
}

fn graph_text(g: &Graph, emit: Emit) -> Result<String, LabError> {
    Ok(match emit {
        Emit::G6 => encode_string(g) + "\n",
        Emit::Dot => g.to_dot(),
        Emit::Edges => g.to_edge_list(),
        Emit::Json => serde_json::to_string_pretty(&json!({"n": g.n(), "edges": g.edges(), "labels": g.labels()})).unwrap(),
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["u", "v"]).unwrap();
            for (u, v) in g.edges() {
                w.write_record([u.to_string(), v.to_string()]).unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
    })
}

/// Host in DOT with one cluster per branch set.
fn model_dot(g: &Graph, branch: &[Vec<usize>]) -> String {
    let mut s = String::from("graph model {\n");
    for (p, set) in branch.iter().enumerate() {
        s += &format!("  subgraph cluster_{p} {{\n    label=\"{p}\";\n");
        for v in set {
            s += &format!("    {v};\n");
        }
        s += "  }\n";
    }
    for (u, v) in g.edges() {
        s += &format!("  {u} -- {v};\n");
    }
    s + "}\n"
}

fn surface_json(s: &Surface) -> Value {
    match s {
        Surface::Standard { h, c } => json!({"h": h, "c": c}),
        Surface::Empty => json!("empty"),
    }
}

fn run(cli: Cli) -> Result<Output, LabError> {
    let nodes = match cli.budget {
        Some(b) => b,
        None => minorlab::default_budget()?,
    };
    let budget = Budget::new(nodes);
    let emit = cli.emit;
    match cli.cmd {
        Cmd::Gen { family, k, h, c, n, m, base, cycle, index, tags, out } => {
            let spec = spec_of(family, k, h, c, n, m, base, cycle, index)?;
            let g = generate(&spec).map_err(|e| LabError::Config(e.to_string()))?;
            let text = graph_text(&g.graph, emit.unwrap_or(Emit::G6))?;
            if tags {
                let path = out.as_ref().map_or(PathBuf::from("tags.json"), |p| p.with_extension("tags.json"));
                let side = json!({"spec": g.spec, "tags": g.tags, "degenerate": g.degenerate});
                std::fs::write(&path, serde_json::to_string_pretty(&side).unwrap()).map_err(|e| LabError::Config(format!("{}: {e}", path.display())))?;
            }
            if let Some(p) = out {
                std::fs::write(&p, &text).map_err(|e| LabError::Config(format!("{}: {e}", p.display())))?;
                return Ok(ok(String::new()));
            }
            Ok(ok(text))
        }
        Cmd::Minor { pattern, host } => {
            let (h, g) = (read_graph(&pattern)?, read_graph(&host)?);
            let answer = minor_search(&h, &g, &MinorOptions::new(&budget)).map_err(core)?;
            match (emit.unwrap_or(Emit::Json), answer) {
                (Emit::Dot, MinorAnswer::Found(m)) => Ok(ok(model_dot(&g, &m.branch))),
                (Emit::Dot, MinorAnswer::Absent(_)) => Ok(ok(g.to_dot())),
                (e, MinorAnswer::Found(m)) => json_only(Some(e), json!({"found": true, "model": m, "search_stats": budget.stats()})),
                (e, MinorAnswer::Absent(p)) => json_only(Some(e), json!({"found": false, "proof": p, "search_stats": budget.stats()})),
            }
        }
        Cmd::Pack { z, host, k, half, mixed } => {
            let (zs, g) = (read_graphs(&z)?, read_graph(&host)?);
            let kind = if mixed { PackKind::Mixed } else { PackKind::Single };
            let r = pack(&zs, &g, k, if half { 2 } else { 1 }, kind, &MinorOptions::new(&budget)).map_err(core)?;
            let v = match r {
                PackOutcome::Found(cert) => json!({"found": true, "certificate": cert}),
                PackOutcome::Absent { proofs } => json!({"found": false, "proofs": proofs}),
            };
            json_only(emit, v)
        }
        Cmd::Cover { z, host, cap } => {
            let (zs, g) = (read_graphs(&z)?, read_graph(&host)?);
            let c = cover(&zs, &g, cap, &MinorOptions::new(&budget)).map_err(core)?;
            json_only(emit, json!({"size": c.s.len(), "certificate": c}))
        }
        Cmd::Ep { z, host, kmax } => {
            let (zs, g) = (read_graphs(&z)?, read_graph(&host)?);
            let r = ep_parameter(&zs, &g, kmax, &MinorOptions::new(&budget)).map_err(core)?;
            json_only(emit, serde_json::to_value(r).unwrap())
        }
        Cmd::Genus { input } => {
            let g = read_graph(&input)?;
            let p = genus_profile(&g, &GenusOptions::new(&budget)).map_err(core)?;
            json_only(
                emit,
                json!({
                    "eg": p.eg,
                    "orientable": is_orientable(&g, &p.witness),
                    "orientable_genus": p.orientable_genus,
                    "nonorientable_genus": p.nonorientable_genus,
                    "witness": p.witness,
                }),
            )
        }
        Cmd::Embeds { input, surface } => {
            let g = read_graph(&input)?;
            let s = parse_surface(&surface)?;
            let w = embeds(&g, &s, &GenusOptions::new(&budget)).map_err(core)?;
            json_only(emit, json!({"embeds": w.is_some(), "surface": surface_json(&s), "witness": w}))
        }
        Cmd::Disk { input, x } => {
            let g = read_graph(&input)?;
            let x = parse_vertices(&x)?;
            json_only(emit, json!({"disk_embeddable": disk_embeddable(&g, &x).map_err(core)?}))
        }
        Cmd::Kc { input } => {
            let r = is_kuratowski_connected(&read_graph(&input)?).map_err(core)?;
            json_only(emit, serde_json::to_value(r).unwrap())
        }
        Cmd::Core { input, a, b } => {
            let g = read_graph(&input)?;
            let sep = Separation::new(&g, &parse_vertices(&a)?, &parse_vertices(&b)?).map_err(|e| LabError::Config(e.to_string()))?;
            json_only(emit, serde_json::to_value(core_component(&g, &sep).map_err(core)?).unwrap())
        }
        Cmd::Sobs { z, members } => {
            let set = match (z, members) {
                (Some(z), None) => surfaces_excluding(&read_graphs(&z)?, 48, &budget).map_err(core)?,
                (None, Some(m)) => ClosedSurfaceSet::from_members(&parse_surfaces(&m)?).map_err(|e| LabError::Config(e.to_string()))?,
                _ => return Err(LabError::Config("give --z or --members".into())),
            };
            match emit {
                None => Ok(ok(set.sobs().iter().map(Surface::to_string).collect::<Vec<_>>().join(" ") + "\n")),
                Some(e) => json_only(Some(e), json!({"sobs": set.sobs().iter().map(surface_json).collect::<Vec<_>>()})),
            }
        }
        Cmd::Verify { suite, claims: file, only, workers, out } => {
            let mut list = match file {
                Some(p) => claims::from_toml(&std::fs::read_to_string(&p).map_err(|e| LabError::Config(format!("{}: {e}", p.display())))?)?,
                None => claims::suite(&suite)?,
            };
            if let Some(f) = only {
                list.retain(|c| c.id.contains(&f));
            }
            let reports = run_claims(&list, nodes, workers)?;
            let body = match emit.unwrap_or(Emit::Json) {
                Emit::Json => serde_json::to_string_pretty(&reports).unwrap(),
                Emit::Csv => reports_csv(&reports),
                other => return Err(unsupported(other)),
            };
            if let Some(p) = out {
                std::fs::write(&p, &body).map_err(|e| LabError::Config(format!("{}: {e}", p.display())))?;
            }
            for r in &reports {
                eprintln!("{:<28} {:<8} {:>8} ms", r.claim_id, status_word(r), r.runtime_ms);
            }
            Ok(Output { text: body, code: exit_code(&reports) as u8 })
        }
    }
}

fn status_word(r: &Report) -> &'static str {
    match r.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Refused => "refused",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout();
            let _ = stdout.write_all(out.text.as_bytes());
            if !out.text.is_empty() && !out.text.ends_with('\n') {
                let _ = writeln!(stdout);
            }
            ExitCode::from(out.code)
        }
        Err(LabError::Core(Error::Refused(r))) => {
            eprintln!("refused: {r}");
            ExitCode::from(2)
        }
        Err(e @ LabError::Config(_)) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
        Err(LabError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
