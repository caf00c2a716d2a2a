use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::embed::{genus_profile, GenusOptions};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::Graph;

/// A closed surface up to homeomorphism, Dyck-normalized (`c <= 2`), or the
/// empty surface Σ^∅ in which only the vertexless graph embeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "SurfaceRepr", try_from = "SurfaceRepr")]
pub enum Surface {
    Standard { h: usize, c: usize },
    Empty,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SurfaceRepr {
    Standard { h: usize, c: usize },
    Named(String),
}

impl From<Surface> for SurfaceRepr {
    fn from(s: Surface) -> Self {
        match s {
            Surface::Standard { h, c } => SurfaceRepr::Standard { h, c },
            Surface::Empty => SurfaceRepr::Named("empty".into()),
        }
    }
}

impl TryFrom<SurfaceRepr> for Surface {
    type Error = Error;
    fn try_from(r: SurfaceRepr) -> Result<Surface> {
        match r {
            SurfaceRepr::Standard { h, c } => Ok(Surface::normalize(h, c)),
            SurfaceRepr::Named(s) => s.parse(),
        }
    }
}

impl Surface {
    pub const SPHERE: Surface = Surface::Standard { h: 0, c: 0 };
    pub const TORUS: Surface = Surface::Standard { h: 1, c: 0 };
    pub const PROJECTIVE_PLANE: Surface = Surface::Standard { h: 0, c: 1 };
    pub const KLEIN_BOTTLE: Surface = Surface::Standard { h: 0, c: 2 };

    /// Apply `(h, c) -> (h + 1, c - 2)` while `c >= 3`.
    pub fn normalize(mut h: usize, mut c: usize) -> Surface {
        while c >= 3 {
            h += 1;
            c -= 2;
        }
        Surface::Standard { h, c }
    }

    pub fn orientable(h: usize) -> Surface {
        Surface::Standard { h, c: 0 }
    }

    /// The non-orientable surface of Euler genus `k >= 1`.
    pub fn nonorientable(k: usize) -> Surface {
        assert!(k >= 1, "non-orientable surfaces have Euler genus at least 1");
        Surface::normalize(0, k)
    }

    /// Euler genus `2h + c`; `None` for Σ^∅.
    pub fn eg(&self) -> Option<usize> {
        match *self {
            Surface::Standard { h, c } => Some(2 * h + c),
            Surface::Empty => None,
        }
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, Surface::Standard { c: 0, .. })
    }

    /// Σ ⪯ Σ′: Σ′ arises from Σ by adding handles or crosscaps.
    pub fn leq(&self, other: &Surface) -> bool {
        match (self, other) {
            (Surface::Empty, _) => true,
            (_, Surface::Empty) => false,
            (a, b) => {
                let (e1, e2) = (a.eg().unwrap(), b.eg().unwrap());
                match (a.is_orientable(), b.is_orientable()) {
                    (true, true) => e1 <= e2,
                    (true, false) => e2 > e1,
                    (false, false) => e1 <= e2,
                    (false, true) => false,
                }
            }
        }
    }

    /// All standard surfaces of Euler genus at most `eg`.
    pub fn all_up_to(eg: usize) -> Vec<Surface> {
        let mut out = Vec::new();
        for e in 0..=eg {
            if e % 2 == 0 {
                out.push(Surface::orientable(e / 2));
            }
            if e >= 1 {
                out.push(Surface::nonorientable(e));
            }
        }
        out
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Standard { h, c } => write!(f, "S({h},{c})"),
            Surface::Empty => write!(f, "S(empty)"),
        }
    }
}

impl FromStr for Surface {
    type Err = Error;

    /// Accepts `h,c`, `S(h,c)` or `empty`.
    fn from_str(s: &str) -> Result<Surface> {
        let t = s.trim();
        let t = t.strip_prefix("S(").and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        if t.eq_ignore_ascii_case("empty") {
            return Ok(Surface::Empty);
        }
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("surface {s:?}: expected h,c")));
        }
        let p = |x: &str| x.parse::<usize>().map_err(|e| Error::Parse(format!("surface {s:?}: {e}")));
        Ok(Surface::normalize(p(parts[0])?, p(parts[1])?))
    }
}

/// A proper, downward-closed set of surfaces, stored by its obstruction
/// antichain (the ⪯-minimal non-members).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSurfaceSet {
    obstructions: Vec<Surface>,
}

impl ClosedSurfaceSet {
    pub fn from_obstructions(mut obs: Vec<Surface>) -> Result<Self> {
        obs.sort();
        obs.dedup();
        if obs.is_empty() || obs.len() > 2 {
            return Err(Error::Params(format!("{} obstructions; expected 1 or 2", obs.len())));
        }
        for a in &obs {
            for b in &obs {
                if a != b && a.leq(b) {
                    return Err(Error::Params(format!("{a} and {b} are comparable")));
                }
            }
        }
        Ok(ClosedSurfaceSet { obstructions: obs })
    }

    /// The set given by an explicit finite list of members.
    pub fn from_members(members: &[Surface]) -> Result<Self> {
        for m in members {
            for below in Surface::all_up_to(m.eg().unwrap_or(0)).into_iter().chain([Surface::Empty]) {
                if below.leq(m) && !members.contains(&below) {
                    return Err(Error::Params(format!("not closed: {m} is listed but {below} is not")));
                }
            }
        }
        let max_eg = members.iter().filter_map(Surface::eg).max().unwrap_or(0);
        let mut candidates = vec![Surface::Empty];
        candidates.extend(Surface::all_up_to(max_eg + 2));
        let outside: Vec<Surface> = candidates.into_iter().filter(|s| !members.contains(s)).collect();
        let minimal = outside
            .iter()
            .filter(|s| !outside.iter().any(|t| t != *s && t.leq(s)))
            .copied()
            .collect();
        ClosedSurfaceSet::from_obstructions(minimal)
    }

    pub fn contains(&self, s: &Surface) -> bool {
        !self.obstructions.iter().any(|o| o.leq(s))
    }

    pub fn sobs(&self) -> &[Surface] {
        &self.obstructions
    }
}

/// S_Z: the surfaces in which no member of `z` embeds.
///
/// Computed from each member's orientable and non-orientable genus. The
/// non-orientable obstruction is kept only when it is not above the
/// orientable one, i.e. when its Euler genus is at most `2 * min γ`.
/// `eg_max` caps the orientable obstruction's Euler genus.
pub fn surfaces_excluding(z: &[Graph], eg_max: usize, budget: &Budget) -> Result<ClosedSurfaceSet> {
    if z.is_empty() {
        return Err(Error::Params("empty antichain".into()));
    }
    if z.iter().any(|g| g.n() == 0) {
        return ClosedSurfaceSet::from_obstructions(vec![Surface::Empty]);
    }
    let opts = GenusOptions::new(budget);
    let mut min_h = usize::MAX;
    let mut profiles = Vec::new();
    for g in z {
        let p = genus_profile(g, &opts)?;
        min_h = min_h.min(p.orientable_genus);
        profiles.push(p);
    }
    if 2 * min_h > eg_max {
        return Err(budget
            .refusal(format!("orientable obstruction needs Euler genus {} > cap {eg_max}", 2 * min_h))
            .into());
    }
    let min_k = profiles.iter().map(|p| p.nonorientable_genus).min().unwrap();
    let orientable = Surface::orientable(min_h);
    let mut obs = vec![orientable];
    if min_k >= 1 && min_k <= 2 * min_h {
        obs.push(Surface::nonorientable(min_k));
    }
    ClosedSurfaceSet::from_obstructions(obs)
}

/// Template for the Dyck grids `D_k^Σ` of one obstruction surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyckTemplate {
    pub h: usize,
    pub c: usize,
}

impl DyckTemplate {
    pub fn at(&self, k: usize) -> FamilySpec {
        FamilySpec::DyckGrid { k, h: self.h, c: self.c }
    }
}

/// D_Z: one Dyck-grid template per surface of sobs(S_Z).
pub fn dyck_family_for(z: &[Graph], budget: &Budget) -> Result<Vec<(Surface, DyckTemplate)>> {
    let set = surfaces_excluding(z, 2 * crate::embed::DEFAULT_MAX_BLOCK_EDGES, budget)?;
    let mut out = Vec::new();
    for s in set.sobs() {
        match *s {
            Surface::Empty => return Err(Error::NotInHMinus("a member has no vertices".into())),
            Surface::Standard { h: 0, c: 0 } => {
                let planar = z.iter().position(crate::embed::planar).unwrap_or(0);
                return Err(Error::NotInHMinus(format!(
                    "member {planar} ({}) is planar",
                    crate::graph6::encode_string(&z[planar])
                )));
            }
            Surface::Standard { h, c } => out.push((*s, DyckTemplate { h, c })),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(h: usize, c: usize) -> Surface {
        Surface::Standard { h, c }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(Surface::normalize(0, 3), s(1, 1));
        assert_eq!(Surface::normalize(2, 0), s(2, 0));
        assert_eq!(Surface::normalize(0, 4), s(1, 2));
    }

    #[test]
    fn leq_examples() {
        assert!(s(0, 0).leq(&s(1, 0)));
        assert!(!s(0, 1).leq(&s(2, 0)));
        assert!(s(0, 1).leq(&s(0, 2)));
        assert!(s(1, 0).leq(&s(1, 1)));
        assert!(!s(1, 0).leq(&s(0, 2)));
    }

    #[test]
    fn sobs_of_finite_sets() {
        let sobs = |m: &[Surface]| ClosedSurfaceSet::from_members(m).unwrap().sobs().to_vec();
        assert_eq!(sobs(&[]), vec![Surface::Empty]);
        assert_eq!(sobs(&[Surface::Empty]), vec![s(0, 0)]);
        assert_eq!(sobs(&[Surface::Empty, s(0, 0)]), vec![s(0, 1), s(1, 0)]);
        assert_eq!(sobs(&[Surface::Empty, s(0, 0), s(0, 1), s(0, 2)]), vec![s(1, 0)]);
        assert!(ClosedSurfaceSet::from_members(&[s(0, 0)]).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1,0".parse::<Surface>().unwrap(), s(1, 0));
        assert_eq!("S(0,3)".parse::<Surface>().unwrap(), s(1, 1));
        assert_eq!("empty".parse::<Surface>().unwrap(), Surface::Empty);
        assert_eq!(s(2, 1).to_string(), "S(2,1)");
    }
}
