use serde::Serialize;

use super::{minor_search, MinorAnswer, MinorModel, MinorOptions};
use crate::error::Result;
use crate::family::generate;
use crate::graph::Graph;
use crate::surface::{dyck_family_for, Surface};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpResult {
    pub value: usize,
    /// The Dyck grid found at `value`, when positive.
    pub surface: Option<Surface>,
    pub model: Option<MinorModel>,
    /// The grid at `value` is flagged degenerate (k < 3).
    pub degenerate: bool,
}

/// Largest `k <= k_max` such that some `D_k^Σ`, Σ ∈ sobs(S_Z), is a minor of
/// `g`; 0 if none is.
pub fn ep_parameter(z: &[Graph], g: &Graph, k_max: usize, opts: &MinorOptions) -> Result<EpResult> {
    let family = dyck_family_for(z, opts.budget)?;
    for k in (1..=k_max).rev() {
        for (surface, template) in &family {
            let grid = generate(&template.at(k))?;
            if let MinorAnswer::Found(m) = minor_search(&grid.graph, g, opts)? {
                return Ok(EpResult { value: k, surface: Some(*surface), model: Some(m), degenerate: grid.degenerate });
            }
        }
    }
    Ok(EpResult { value: 0, surface: None, model: None, degenerate: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::family::{complete, FamilySpec};

    #[test]
    fn self_containment_and_deletion() {
        let b = Budget::default();
        let opts = MinorOptions::new(&b);
        let z = [complete(5)];
        let g = generate(&FamilySpec::DyckGrid { k: 2, h: 0, c: 1 }).unwrap().graph;
        assert_eq!(ep_parameter(&z, &g, 2, &opts).unwrap().value, 2);
        let minus = g.delete_vertex(0).unwrap();
        let v = ep_parameter(&z, &minus, 2, &opts).unwrap().value;
        assert!((1..=2).contains(&v));
        assert_eq!(ep_parameter(&z, &complete(4), 3, &opts).unwrap().value, 0);
    }
}
