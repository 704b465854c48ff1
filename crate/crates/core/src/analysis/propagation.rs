use serde::{Deserialize, Serialize};

use crate::quiver::{ArrowIdx, Quiver, VertexIdx};

use super::census::{RelationClass, RelationTypeReport, SideCensus};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagationReport {
    /// Set when the quiver is excluded from the check.
    pub skipped: Option<String>,
    pub checked: usize,
    pub inconsistencies: Vec<String>,
}

impl PropagationReport {
    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }
}

type P2 = (ArrowIdx, ArrowIdx);

/// Arrows from `x` back to `i`.
fn back(q: &Quiver, x: VertexIdx, i: VertexIdx) -> Vec<ArrowIdx> {
    q.incoming(i).iter().copied().filter(|&d| q.source(d) == x).collect()
}

/// Expected type C relation `{b d, b' d'}` ending at `i`, where `d`, `d'`
/// close `b`, `b'` back to `i`.
fn expect_c(q: &Quiver, end: &SideCensus, i: VertexIdx, b: ArrowIdx, b2: ArrowIdx) -> bool {
    let ds = back(q, q.target(b), i);
    let ds2 = back(q, q.target(b2), i);
    ds.iter()
        .any(|&d| ds2.iter().any(|&d2| d != d2 && end.pairs((b, d), (b2, d2))))
}

/// Expected type Z relation `b d` ending at `i`.
fn expect_z(q: &Quiver, end: &SideCensus, i: VertexIdx, b: ArrowIdx) -> bool {
    back(q, q.target(b), i).into_iter().any(|d| end.is_zero((b, d)))
}

/// How the type C and type Z relations starting at each vertex propagate to
/// the relations ending there.
pub fn propagation_check(q: &Quiver, census: &RelationTypeReport, markov: bool) -> PropagationReport {
    if markov {
        return PropagationReport {
            skipped: Some("Markov quiver".into()),
            checked: 0,
            inconsistencies: Vec::new(),
        };
    }
    let mut inconsistencies = Vec::new();
    let mut checked = 0;
    for (vi, vc) in census.vertices.iter().enumerate() {
        let i = VertexIdx(vi);
        let (start, end) = (&vc.start, &vc.end);
        let path = |k: usize| -> P2 { start.paths[k] };
        let name = q.vertex_id(i);
        match start.class {
            RelationClass::CC => {
                checked += 1;
                for c in &start.type_c {
                    let (p1, p2) = (path(c.paths[0]), path(c.paths[1]));
                    // the other C relation continues the same first arrows
                    let partner = start.type_c.iter().find(|d| d.paths != c.paths).map(|d| {
                        let (r1, r2) = (path(d.paths[0]), path(d.paths[1]));
                        if r1.0 == p1.0 {
                            (r1.1, r2.1)
                        } else {
                            (r2.1, r1.1)
                        }
                    });
                    let Some((alt1, alt2)) = partner else { continue };
                    if !expect_c(q, end, i, p1.1, alt1) || !expect_c(q, end, i, p2.1, alt2) {
                        inconsistencies.push(format!(
                            "{name}: two type C relations from the vertex without matching type C relations ending there"
                        ));
                        break;
                    }
                }
            }
            RelationClass::CZ => {
                checked += 1;
                let z = path(start.zero[0]);
                let c = &start.type_c[0];
                let (p1, p2) = (path(c.paths[0]), path(c.paths[1]));
                let (with_z, other) = if p1.0 == z.0 { (p1, p2) } else { (p2, p1) };
                // with_z = a' gamma, other = a beta_1, z = a' gamma_1
                let ok = expect_c(q, end, i, z.1, with_z.1) && expect_z(q, end, i, other.1);
                if !ok {
                    inconsistencies.push(format!(
                        "{name}: type C and type Z pattern from the vertex does not propagate"
                    ));
                }
            }
            RelationClass::ZZ => {
                checked += 1;
                let (z1, z2) = (path(start.zero[0]), path(start.zero[1]));
                if z1.0 == z2.0 {
                    inconsistencies.push(format!("{name}: both type Z relations start with the same arrow"));
                } else if !expect_z(q, end, i, z1.1) || !expect_z(q, end, i, z2.1) {
                    inconsistencies.push(format!("{name}: type Z relations from the vertex do not propagate"));
                }
            }
            RelationClass::Other => {
                inconsistencies.push(format!(
                    "{name}: relations from the vertex are neither type C nor type Z"
                ));
            }
        }
    }
    PropagationReport {
        skipped: None,
        checked,
        inconsistencies,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, BuildOptions};
    use crate::analysis::census::relation_census;
    use crate::field::PrimeField;
    use crate::instances;

    #[test]
    fn generated_instances_propagate() {
        let gf5 = PrimeField::new(5).unwrap();
        for p in [
            instances::tetrahedral(1, 1),
            instances::tetrahedral(2, 1),
            instances::triangle_disk(1, 1),
            instances::torus_projective([3, 2, 1, 1], [1, 1, 1, 1]).unwrap(),
        ] {
            let a = build_algebra(&p, gf5, &BuildOptions::default()).unwrap();
            let c = relation_census(&a).unwrap();
            let r = propagation_check(a.quiver(), &c, false);
            assert!(r.is_consistent(), "{:?}", r.inconsistencies);
            assert_eq!(r.checked, a.quiver().vertex_count());
        }
    }

    #[test]
    fn markov_is_skipped() {
        let a = build_algebra(
            &instances::markov(1, 1),
            PrimeField::new(5).unwrap(),
            &BuildOptions::default(),
        )
        .unwrap();
        let c = relation_census(&a).unwrap();
        assert!(propagation_check(a.quiver(), &c, true).skipped.is_some());
    }
}
