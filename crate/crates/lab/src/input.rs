//! Graph arguments: a file (graph6 or edge list), a graph name, a graph6
//! string, or a family spec.

use std::path::Path;

use minorlab_core::family::{generate, resolve_graph, FamilySpec};
use minorlab_core::{Graph, Surface};
use serde::{Deserialize, Serialize};

use crate::LabError;

/// A graph as written in a claim: a name / graph6 string, or a family spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Named(String),
    Family(FamilySpec),
}

impl GraphRef {
    pub fn resolve(&self) -> Result<Graph, LabError> {
        match self {
            GraphRef::Named(s) => resolve_graph(s).map_err(|e| LabError::Config(format!("graph {s:?}: {e}"))),
            GraphRef::Family(spec) => generate(spec).map(|g| g.graph).map_err(|e| LabError::Config(format!("{spec:?}: {e}"))),
        }
    }
}

pub fn resolve_all(refs: &[GraphRef]) -> Result<Vec<Graph>, LabError> {
    refs.iter().map(GraphRef::resolve).collect()
}

/// A command-line graph argument. Existing paths are read as graph6 (first
/// non-empty line) or as an edge list ("n" then "u v" lines).
pub fn read_graph(arg: &str) -> Result<Graph, LabError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::Config(format!("{arg}: {e}")))?;
        let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        let parsed = if first.parse::<usize>().is_ok() {
            Graph::from_edge_list(&text)
        } else {
            minorlab_core::graph6::decode_str(first.trim_start_matches(">>graph6<<"))
        };
        return parsed.map_err(|e| LabError::Config(format!("{arg}: {e}")));
    }
    resolve_graph(arg).map_err(|e| LabError::Config(format!("graph {arg:?}: {e}")))
}

/// Comma-separated graph arguments.
pub fn read_graphs(arg: &str) -> Result<Vec<Graph>, LabError> {
    arg.split(',').filter(|s| !s.trim().is_empty()).map(|s| read_graph(s.trim())).collect()
}

pub fn parse_surface(s: &str) -> Result<Surface, LabError> {
    s.parse().map_err(|e| LabError::Config(format!("surface {s:?}: {e}")))
}

/// Surfaces separated by whitespace or semicolons, e.g. `"empty; S(0,0) 0,1"`.
pub fn parse_surfaces(s: &str) -> Result<Vec<Surface>, LabError> {
    s.split(|c: char| c.is_whitespace() || c == ';').filter(|t| !t.is_empty()).map(parse_surface).collect()
}

pub fn parse_vertices(s: &str) -> Result<Vec<usize>, LabError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| LabError::Config(format!("bad vertex {t:?}"))))
        .collect()
}
