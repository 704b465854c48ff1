use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::instances;

use super::{ArrowIdx, TriangulationQuiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    Markov,
    Tetrahedral,
    TriangleDisk,
    Other,
}

impl fmt::Display for SpecialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpecialKind::Markov => "Markov",
            SpecialKind::Tetrahedral => "Tetrahedral",
            SpecialKind::TriangleDisk => "TriangleDisk",
            SpecialKind::Other => "Other",
        };
        f.write_str(s)
    }
}

/// An arrow bijection `phi` from `a` to `b` commuting with f and bar, if any.
///
/// f and bar generate a transitive action on the arrows of a connected
/// triangulation quiver, so fixing the image of one arrow determines `phi`.
/// Vertex compatibility follows: sources are bar-pairs and t(x) = s(f(x)).
pub fn find_isomorphism(a: &TriangulationQuiver, b: &TriangulationQuiver) -> Option<Vec<ArrowIdx>> {
    let n = a.quiver().arrow_count();
    if n != b.quiver().arrow_count()
        || a.quiver().vertex_count() != b.quiver().vertex_count()
        || a.g_profile() != b.g_profile()
        || a.f_profile() != b.f_profile()
    {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let start = ArrowIdx(0);
    'candidates: for image in b.quiver().arrows() {
        let mut phi: Vec<Option<ArrowIdx>> = vec![None; n];
        let mut used = vec![false; n];
        phi[start.0] = Some(image);
        used[image.0] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let y = phi[x.0].expect("assigned");
            for (nx, ny) in [(a.f(x), b.f(y)), (a.bar(x), b.bar(y))] {
                match phi[nx.0] {
                    Some(prev) if prev != ny => continue 'candidates,
                    Some(_) => {}
                    None => {
                        if used[ny.0] {
                            continue 'candidates;
                        }
                        used[ny.0] = true;
                        phi[nx.0] = Some(ny);
                        queue.push_back(nx);
                    }
                }
            }
        }
        if phi.iter().all(Option::is_some) {
            return Some(phi.into_iter().map(|p| p.expect("checked")).collect());
        }
    }
    None
}

/// Classifies up to isomorphism of triangulation quivers.
pub fn recognize_special(tq: &TriangulationQuiver) -> SpecialKind {
    let candidates = [
        (SpecialKind::Markov, instances::markov_quiver()),
        (SpecialKind::Tetrahedral, instances::tetrahedral_quiver()),
        (SpecialKind::TriangleDisk, instances::triangle_disk_quiver()),
    ];
    candidates
        .into_iter()
        .find(|(_, c)| find_isomorphism(tq, c).is_some())
        .map(|(k, _)| k)
        .unwrap_or(SpecialKind::Other)
}
