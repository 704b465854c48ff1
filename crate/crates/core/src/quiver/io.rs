use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::QuiverError;

use super::{ArrowPermutation, Quiver, TriangulationQuiver};

/// A vertex or arrow label that may be written as a JSON string or number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Text(String),
    Number(serde_json::Number),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Text(s) => f.write_str(s),
            Label::Number(n) => write!(f, "{n}"),
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArrow {
    pub id: Label,
    pub src: Label,
    pub tgt: Label,
}

/// On-disk quiver, optionally with f as disjoint cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<Label>,
    pub arrows: Vec<RawArrow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<Label>>>,
}

impl QuiverFile {
    pub fn from_quiver(q: &Quiver, f: Option<&ArrowPermutation>) -> Self {
        QuiverFile {
            vertices: q.vertex_ids().iter().map(|v| Label::Text(v.clone())).collect(),
            arrows: q
                .arrows()
                .map(|a| {
                    let arrow = q.arrow(a);
                    RawArrow {
                        id: Label::Text(arrow.id.clone()),
                        src: Label::Text(q.vertex_id(arrow.source).to_string()),
                        tgt: Label::Text(q.vertex_id(arrow.target).to_string()),
                    }
                })
                .collect(),
            f: f.map(|f| {
                f.cycles_as_ids(q)
                    .into_iter()
                    .map(|c| c.into_iter().map(Label::Text).collect())
                    .collect()
            }),
        }
    }

    pub fn from_triangulation(tq: &TriangulationQuiver) -> Self {
        Self::from_quiver(tq.quiver(), Some(tq.f_perm()))
    }

    pub fn to_quiver(&self) -> Result<Quiver, QuiverError> {
        Quiver::new(
            self.vertices.iter().map(|v| v.to_string()),
            self.arrows
                .iter()
                .map(|a| (a.id.to_string(), a.src.to_string(), a.tgt.to_string())),
        )
    }

    pub fn cycles(&self) -> Option<Vec<Vec<String>>> {
        self.f
            .as_ref()
            .map(|f| f.iter().map(|c| c.iter().map(Label::to_string).collect()).collect())
    }

    /// Validates both the quiver and f. Fails if f is absent.
    pub fn to_triangulation(&self) -> Result<TriangulationQuiver, QuiverError> {
        let q = self.to_quiver()?;
        let cycles = self
            .cycles()
            .ok_or_else(|| QuiverError::NotBijection("no f given".into()))?;
        TriangulationQuiver::from_cycles(q, &cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn round_trip() {
        let tq = instances::torus_projective_quiver();
        let file = QuiverFile::from_triangulation(&tq);
        let text = serde_json::to_string(&file).unwrap();
        let back: QuiverFile = serde_json::from_str(&text).unwrap();
        let tq2 = back.to_triangulation().unwrap();
        assert_eq!(tq2.quiver(), tq.quiver());
        assert_eq!(tq2.f_perm(), tq.f_perm());
    }

    #[test]
    fn numeric_vertices() {
        let text = r#"{"vertices":[1,2],"arrows":[{"id":"a","src":1,"tgt":2}]}"#;
        let file: QuiverFile = serde_json::from_str(text).unwrap();
        let q = file.to_quiver().unwrap();
        assert_eq!(q.vertex_id(q.target(q.arrow_index("a").unwrap())), "2");
    }
}
