use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{symmetric_form, FiniteDimAlgebra, SymmetricVerdict};
use crate::field::Field;
use crate::homological::period_of_simple;
use crate::instances;
use crate::presentation::WeightData;
use crate::quiver::{find_isomorphism, recognize_special, SpecialKind};

use super::census::{jj_dims_check, relation_census, LayerCheck, RelationTypeReport};
use super::fit::fit_weights;
use super::propagation::{propagation_check, PropagationReport};
use super::triangulation::find_triangulation;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub bound: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            bound: 8,
            trials: 32,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyGuess {
    Weighted,
    Deformed,
    Tetrahedral,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplePeriod {
    pub vertex: String,
    pub period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricSummary {
    pub witness: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub layers: LayerCheck,
    pub two_relations: bool,
    pub propagation: Option<PropagationReport>,
    pub vertices: Option<RelationTypeReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub consistent: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GQTReport {
    pub schema_version: u32,
    pub field: String,
    pub dimension: usize,
    pub two_regular: bool,
    pub connected: bool,
    pub symmetric: SymmetricSummary,
    pub simple_periods: Vec<SimplePeriod>,
    pub cartan_determinant: String,
    pub census: CensusSummary,
    /// f as cycles of arrow ids.
    pub triangulation: Option<Vec<Vec<String>>>,
    pub family: FamilyGuess,
    pub weights: Option<WeightData>,
    pub verdict: Verdict,
}

fn symmetric_summary<E>(v: &SymmetricVerdict<E>) -> SymmetricSummary {
    let detail = match v {
        SymmetricVerdict::Witness { attempts, .. } => format!("non-degenerate form found after {attempts} candidates"),
        SymmetricVerdict::NotFound { trials, codimension } => {
            format!("no non-degenerate form among {trials} candidates in a space of dimension {codimension}")
        }
        SymmetricVerdict::NotSymmetric { vertex } => format!("socle of P_{vertex} meets the commutator space"),
    };
    SymmetricSummary {
        witness: v.is_witness(),
        detail,
    }
}

/// Every machine-checkable condition of generalized quaternion type.
pub fn gqt_report<F: Field>(a: &FiniteDimAlgebra<F>, opts: &ReportOptions) -> GQTReport {
    let q = a.quiver();
    let two_regular = q.is_two_regular();
    let connected = q.is_connected();
    let symmetric = symmetric_summary(&symmetric_form(a, opts.trials, opts.seed));
    let simple_periods: Vec<SimplePeriod> = q
        .vertices()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|v| SimplePeriod {
            vertex: q.vertex_id(v).to_string(),
            period: period_of_simple(a, v, opts.bound).expect("vertex in range"),
        })
        .collect();
    let layers = jj_dims_check(a);
    let census = relation_census(a).ok();
    let triangulation = census.as_ref().and_then(|c| find_triangulation(a, c));
    let markov = triangulation
        .as_ref()
        .is_some_and(|tq| recognize_special(tq) == SpecialKind::Markov);
    let propagation = census.as_ref().map(|c| propagation_check(q, c, markov));
    let weights = triangulation.as_ref().and_then(|tq| fit_weights(a, tq));
    let family = match (&weights, &triangulation) {
        (Some(w), _) if w.b.is_empty() => FamilyGuess::Weighted,
        (Some(_), _) => FamilyGuess::Deformed,
        (None, Some(tq)) if find_isomorphism(tq, &instances::tetrahedral_quiver()).is_some() => {
            FamilyGuess::Tetrahedral
        }
        _ => FamilyGuess::Unknown,
    };

    let mut violations = Vec::new();
    if !two_regular {
        violations.push("quiver is not 2-regular".to_string());
    }
    if !connected {
        violations.push("quiver is not connected".to_string());
    }
    if !symmetric.witness {
        violations.push(format!("no symmetric form: {}", symmetric.detail));
    }
    for s in &simple_periods {
        if s.period != Some(4) {
            let got = s
                .period
                .map_or(format!("none within {}", opts.bound), |p| p.to_string());
            violations.push(format!("simple module at {} has period {got}, not 4", s.vertex));
        }
    }
    for o in &layers.offenders {
        violations.push(format!(
            "J^2/J^3 at {} has dimensions {} and {}, not 2",
            o.vertex, o.start, o.end
        ));
    }
    let two_relations = census
        .as_ref()
        .is_some_and(RelationTypeReport::two_relations_everywhere);
    if census.is_some() && !two_relations {
        violations.push("some vertex lacks exactly two independent minimal relations".to_string());
    }
    if let Some(p) = &propagation {
        violations.extend(p.inconsistencies.iter().map(|s| format!("relation propagation: {s}")));
    }
    if two_regular && triangulation.is_none() {
        violations.push("no triangulation f is compatible with the minimal relations".to_string());
    }

    GQTReport {
        schema_version: SCHEMA_VERSION,
        field: a.field_descriptor().to_string(),
        dimension: a.dim(),
        two_regular,
        connected,
        symmetric,
        simple_periods,
        cartan_determinant: a.cartan().determinant.to_string(),
        census: CensusSummary {
            layers,
            two_relations,
            propagation,
            vertices: census,
        },
        triangulation: triangulation.as_ref().map(|tq| tq.f_perm().cycles_as_ids(q)),
        family,
        weights,
        verdict: Verdict {
            consistent: violations.is_empty(),
            violations,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, BuildOptions};
    use crate::field::{FieldDescriptor, PrimeField, Rationals};
    use crate::presentation::Presentation;
    use crate::quiver::Quiver;

    #[test]
    fn markov_over_gf7_is_consistent() {
        let a = build_algebra(
            &instances::markov(2, 1),
            PrimeField::new(7).unwrap(),
            &BuildOptions::default(),
        )
        .unwrap();
        let r = gqt_report(&a, &ReportOptions::default());
        assert!(r.verdict.consistent, "{:?}", r.verdict.violations);
        assert!(r.simple_periods.iter().all(|s| s.period == Some(4)));
        assert_eq!(r.family, FamilyGuess::Weighted);
    }

    #[test]
    fn singular_tetrahedral_fails_periods() {
        let a = build_algebra(
            &instances::tetrahedral(1, 0),
            PrimeField::new(5).unwrap(),
            &BuildOptions::default(),
        )
        .unwrap();
        let r = gqt_report(&a, &ReportOptions::default());
        assert!(!r.verdict.consistent);
        assert!(r.verdict.violations.iter().any(|v| v.contains("period")));
    }

    #[test]
    fn path_algebra_is_not_symmetric() {
        let q = Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let p = Presentation::new(q, vec![], FieldDescriptor::Rationals).unwrap();
        let a = build_algebra(&p, Rationals, &BuildOptions::default()).unwrap();
        let r = gqt_report(&a, &ReportOptions::default());
        assert!(!r.symmetric.witness);
        assert!(!r.verdict.consistent);
        assert_eq!(r.family, FamilyGuess::Unknown);
    }
}
