//! The claim registry: one TOML file per suite, compiled into the binary.

use minorlab_core::family::FamilySpec;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::input::GraphRef;
use crate::LabError;

pub const SUITES: [&str; 3] = ["paper", "smoke", "full"];

const PAPER: &str = include_str!("../claims/paper.toml");
const SMOKE: &str = include_str!("../claims/smoke.toml");
const EXTRA: &str = include_str!("../claims/extra.toml");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub id: String,
    /// Acceptance criterion (1..=10) the claim counts towards.
    #[serde(default)]
    pub criterion: Option<u8>,
    #[serde(default)]
    pub title: String,
    /// Node budget; the global budget caps it.
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(flatten)]
    pub op: Operation,
    #[serde(default)]
    pub expect: Expectation,
}

/// What the computed value is compared against. A claim without any of
/// these must be a property operation, which judges itself.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_most: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_least: Option<u64>,
}

impl Expectation {
    pub fn is_empty(&self) -> bool {
        *self == Expectation::default()
    }
}

fn one() -> u8 {
    1
}

fn eg_cap() -> usize {
    48
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Operation {
    /// Obstruction set of the closed surface set with the given members.
    Sobs { members: Vec<String> },
    SurfacesExcluding {
        z: Vec<GraphRef>,
        #[serde(default = "eg_cap")]
        eg_max: usize,
    },
    Kc { graph: GraphRef },
    Isomorphic { a: GraphRef, b: GraphRef },
    /// Generated orders and sizes against closed forms.
    FamilyCounts { families: Vec<FamilySpec> },
    Graph6RoundTrip { families: Vec<FamilySpec> },
    Minor { pattern: GraphRef, host: GraphRef },
    Pack {
        z: Vec<GraphRef>,
        host: GraphRef,
        k: usize,
        #[serde(default = "one")]
        multiplicity: u8,
        #[serde(default)]
        mixed: bool,
    },
    /// Largest packing of `z` in `host`, using the host's canonical
    /// embedding as a surface hint when it has one.
    PackValue {
        z: Vec<GraphRef>,
        host: GraphRef,
        #[serde(default = "one")]
        multiplicity: u8,
    },
    /// pack_{H}(D_k^Σ) ≤ 1 + eg(Σ) − eg(H) for every listed Σ and k.
    PackBound { pattern: GraphRef, surfaces: Vec<String>, ks: Vec<usize> },
    /// Minimum covers of D_k^Σ: nondecreasing in k, and positive whenever
    /// a model exists.
    CoverGrowth { z: Vec<GraphRef>, surface: String, ks: Vec<usize> },
    Cover { z: Vec<GraphRef>, host: GraphRef, cap: usize },
    Ep { z: Vec<GraphRef>, host: GraphRef, k_max: usize },
    Genus { graph: GraphRef },
    Embeds { graph: GraphRef, surface: String },
    Disk { graph: GraphRef, x: Vec<usize> },
    /// Pruned genus engine against signed-rotation enumeration.
    GenusOracle { max_edges: usize },
    /// Genus of K_n and K_{m,n} against the closed-form tables.
    GenusTables { max_complete: usize, max_bipartite: usize },
    MinorOracle { seed: u64, count: usize },
    /// pack ≤ half-pack ≤ 2·cover on random hosts.
    DualityChain { seed: u64, count: usize, patterns: Vec<GraphRef> },
    ApexEquivalence { max_edges: usize, max_union_n: usize },
    GenusAdditivity { seed: u64, count: usize },
    /// Core containment over every separation pair of the corpus.
    CoreNesting { max_n: usize },
    CertificateMutations { seed: u64, count: usize },
    /// Canonical embeddings of Dyck grids realize their surface.
    CanonicalEmbeddings { ks: Vec<usize>, max_hc: usize },
    /// Simple and exceptional cycle lengths against the closed forms;
    /// Dyck-wall mismatches are reported, not failed.
    DyckCycleLengths { ks: Vec<usize>, max_hc: usize },
    /// F(k) ≤ F(k') for k < k' in `ks`.
    Monotone { families: Vec<String>, ks: Vec<usize> },
}

#[derive(Deserialize)]
struct File {
    claim: Vec<ClaimSpec>,
}

fn parse(name: &str, text: &str) -> Result<Vec<ClaimSpec>, LabError> {
    let f: File = toml::from_str(text).map_err(|e| LabError::Config(format!("claims/{name}.toml: {e}")))?;
    Ok(f.claim)
}

/// Claims of a suite, in registry order.
pub fn suite(name: &str) -> Result<Vec<ClaimSpec>, LabError> {
    match name {
        "paper" => parse("paper", PAPER),
        "smoke" => parse("smoke", SMOKE),
        "full" => {
            let mut all = parse("paper", PAPER)?;
            all.extend(parse("smoke", SMOKE)?);
            all.extend(parse("extra", EXTRA)?);
            Ok(all)
        }
        other => Err(LabError::Config(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}

/// Parse a registry file supplied at run time.
pub fn from_toml(text: &str) -> Result<Vec<ClaimSpec>, LabError> {
    parse("<input>", text)
}
