//! Paths, relations and presentations of bound quiver algebras.

mod dsl;
mod families;
mod weights;

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::PresentationError;
use crate::field::{Field, FieldDescriptor, Scalar};
use crate::quiver::{ArrowIdx, ArrowPermutation, Quiver, QuiverFile, TriangulationQuiver, VertexIdx};

pub use dsl::{format_relation, parse_relations, PresentationFile};
pub use families::{deformed_relations, tetrahedral_presentation, weighted_relations};
pub use weights::{a_path, b_path, ResolvedWeights, WeightData};

/// A path of length >= 0. Length zero is the stationary path at `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexIdx,
    target: VertexIdx,
    arrows: Vec<ArrowIdx>,
}

impl Path {
    pub fn stationary(v: VertexIdx) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<ArrowIdx>) -> Result<Self, PresentationError> {
        let Some(&first) = arrows.first() else {
            return Err(PresentationError::BrokenPath("(empty)".into()));
        };
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return Err(PresentationError::BrokenPath(
                    arrows.iter().map(|&a| q.arrow_id(a)).collect::<Vec<_>>().join("*"),
                ));
            }
        }
        Ok(Path {
            source: q.source(first),
            target: q.target(*arrows.last().expect("nonempty")),
            arrows,
        })
    }

    pub fn source(&self) -> VertexIdx {
        self.source
    }

    pub fn target(&self) -> VertexIdx {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowIdx] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`; `None` when they do not compose.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// `a*b*c`, or `e_v` for a stationary path.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex_id(self.source))
        } else {
            self.arrows.iter().map(|&a| q.arrow_id(a)).collect::<Vec<_>>().join("*")
        }
    }

    /// Length first, then identifiers lexicographically.
    pub fn canonical_cmp(&self, other: &Path, q: &Quiver) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            self.arrows
                .iter()
                .map(|&a| q.arrow_rank(a))
                .cmp(other.arrows.iter().map(|&a| q.arrow_rank(a)))
        })
    }
}

/// A linear combination of pairwise different parallel paths with nonzero
/// exact coefficients, terms in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathExpr {
    terms: Vec<(Path, Scalar)>,
}

impl PathExpr {
    /// Merges repeated paths and drops zero terms. Checks parallelism.
    pub fn new(q: &Quiver, terms: Vec<(Path, Scalar)>) -> Result<Self, PresentationError> {
        let mut merged: Vec<(Path, Scalar)> = Vec::with_capacity(terms.len());
        for (p, c) in terms {
            match merged.iter_mut().find(|(x, _)| *x == p) {
                Some((_, acc)) => *acc += c,
                None => merged.push((p, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        merged.sort_by(|a, b| a.0.canonical_cmp(&b.0, q));
        let expr = PathExpr { terms: merged };
        if let Some((first, _)) = expr.terms.first() {
            if expr
                .terms
                .iter()
                .any(|(p, _)| p.source() != first.source() || p.target() != first.target())
            {
                return Err(PresentationError::NotParallel(format_relation(q, &expr)));
            }
        }
        Ok(expr)
    }

    pub fn terms(&self) -> &[(Path, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn source(&self) -> Option<VertexIdx> {
        self.terms.first().map(|(p, _)| p.source())
    }

    pub fn target(&self) -> Option<VertexIdx> {
        self.terms.first().map(|(p, _)| p.target())
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(p, _)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(p, _)| p.len()).max().unwrap_or(0)
    }

    /// Replaces every coefficient by its canonical representative in `field`.
    pub fn reduce_into<F: Field>(&self, q: &Quiver, field: &F) -> Result<PathExpr, PresentationError> {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| Ok((p.clone(), field.to_scalar(&field.from_scalar(c)?))))
            .collect::<Result<Vec<_>, PresentationError>>()?;
        PathExpr::new(q, terms)
    }
}

/// Which generator produced a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Weighted,
    Deformed,
    Tetrahedral,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Weighted => "weighted",
            Family::Deformed => "deformed",
            Family::Tetrahedral => "tetrahedral",
        })
    }
}

/// A quiver, a finite list of relations, and the intended field.
///
/// Generated presentations also remember their triangulation and the
/// longest g-cycle, which the algebra builder uses as a starting length.
#[derive(Debug, Clone)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<PathExpr>,
    field: FieldDescriptor,
    triangulation: Option<ArrowPermutation>,
    length_hint: Option<usize>,
    family: Option<Family>,
}

impl Presentation {
    /// Every relation must be nonzero with all paths of length >= 2.
    pub fn new(quiver: Quiver, relations: Vec<PathExpr>, field: FieldDescriptor) -> Result<Self, PresentationError> {
        for r in &relations {
            if r.is_zero() {
                return Err(PresentationError::EmptyRelation);
            }
            if r.min_len() < 2 {
                return Err(PresentationError::ShortPath(format_relation(&quiver, r)));
            }
        }
        Ok(Presentation {
            quiver,
            relations,
            field: field.validate()?,
            triangulation: None,
            length_hint: None,
            family: None,
        })
    }

    pub fn with_triangulation(mut self, tq: &TriangulationQuiver) -> Self {
        self.triangulation = Some(tq.f_perm().clone());
        self
    }

    pub fn with_length_hint(mut self, len: usize) -> Self {
        self.length_hint = Some(len);
        self
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    /// Reinterprets coefficients in another field, reducing them to canonical
    /// representatives and dropping relations that vanish.
    pub fn with_field(mut self, field: FieldDescriptor) -> Result<Self, PresentationError> {
        let field = field.validate()?;
        let reduced = match field {
            FieldDescriptor::Rationals => self.relations.clone(),
            FieldDescriptor::Prime { p } => {
                let f = crate::field::PrimeField::new(p)?;
                self.relations
                    .iter()
                    .map(|r| r.reduce_into(&self.quiver, &f))
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        self.relations = reduced.into_iter().filter(|r| !r.is_zero()).collect();
        if let Some(r) = self.relations.iter().find(|r| r.min_len() < 2) {
            return Err(PresentationError::ShortPath(format_relation(&self.quiver, r)));
        }
        self.field = field;
        Ok(self)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[PathExpr] {
        &self.relations
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn triangulation_perm(&self) -> Option<&ArrowPermutation> {
        self.triangulation.as_ref()
    }

    /// The attached triangulation quiver, if any and if it validates.
    pub fn triangulation(&self) -> Option<TriangulationQuiver> {
        self.triangulation
            .as_ref()
            .and_then(|f| TriangulationQuiver::new(self.quiver.clone(), f.clone()).ok())
    }

    pub fn length_hint(&self) -> Option<usize> {
        self.length_hint
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// One relation per line in the DSL.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for r in &self.relations {
            out.push_str(&format_relation(&self.quiver, r));
            out.push('\n');
        }
        out
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            field: self.field,
            quiver: QuiverFile::from_quiver(&self.quiver, self.triangulation.as_ref()),
            relations: self
                .relations
                .iter()
                .map(|r| format_relation(&self.quiver, r))
                .collect(),
            family: self.family,
            length_hint: self.length_hint,
        }
    }
}
