//! Quivers, arrow permutations and triangulation quivers.

mod dot;
mod io;
mod perm;
mod special;
mod triangulation;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::QuiverError;

pub use dot::export_dot;
pub use io::{Label, QuiverFile, RawArrow};
pub use perm::ArrowPermutation;
pub use special::{find_isomorphism, recognize_special, SpecialKind};
pub use triangulation::{validate_triangulation, Border, Orbit, TriangulationQuiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexIdx(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrowIdx(pub usize);

impl fmt::Display for VertexIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for ArrowIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: VertexIdx,
    pub target: VertexIdx,
}

/// A finite quiver with opaque string identifiers.
///
/// Indices follow input order. Anything that must be label-stable (relation
/// order, orbit representatives, monomial order) goes through [`Quiver::arrow_rank`],
/// which sorts by identifier.
#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_lookup: HashMap<String, VertexIdx>,
    arrow_lookup: HashMap<String, ArrowIdx>,
    outgoing: Vec<Vec<ArrowIdx>>,
    incoming: Vec<Vec<ArrowIdx>>,
    rank: Vec<usize>,
    connected: bool,
    two_regular: bool,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Validates raw vertex and arrow lists.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_lookup = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_lookup.insert(v.clone(), VertexIdx(i)).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut arrow_lookup = HashMap::new();
        let mut list = Vec::new();
        for (id, src, tgt) in arrows {
            let endpoint = |v: &String| {
                vertex_lookup
                    .get(v)
                    .copied()
                    .ok_or_else(|| QuiverError::DanglingEndpoint {
                        arrow: id.clone(),
                        vertex: v.clone(),
                    })
            };
            let source = endpoint(&src)?;
            let target = endpoint(&tgt)?;
            if arrow_lookup.insert(id.clone(), ArrowIdx(list.len())).is_some() {
                return Err(QuiverError::DuplicateArrow(id));
            }
            list.push(Arrow { id, source, target });
        }
        Ok(Self::assemble(vertices, list, vertex_lookup, arrow_lookup))
    }

    fn assemble(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        vertex_lookup: HashMap<String, VertexIdx>,
        arrow_lookup: HashMap<String, ArrowIdx>,
    ) -> Self {
        let n = vertices.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (k, a) in arrows.iter().enumerate() {
            outgoing[a.source.0].push(ArrowIdx(k));
            incoming[a.target.0].push(ArrowIdx(k));
        }
        let mut order: Vec<usize> = (0..arrows.len()).collect();
        order.sort_by(|&x, &y| arrows[x].id.cmp(&arrows[y].id));
        let mut rank = vec![0; arrows.len()];
        for (r, &k) in order.iter().enumerate() {
            rank[k] = r;
        }
        let two_regular = n > 0 && outgoing.iter().all(|o| o.len() == 2) && incoming.iter().all(|i| i.len() == 2);
        let connected = {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::new();
            if n > 0 {
                seen[0] = true;
                queue.push_back(0);
            }
            while let Some(v) = queue.pop_front() {
                for a in outgoing[v].iter().chain(&incoming[v]) {
                    let arrow = &arrows[a.0];
                    for w in [arrow.source.0, arrow.target.0] {
                        if !seen[w] {
                            seen[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        Quiver {
            vertices,
            arrows,
            vertex_lookup,
            arrow_lookup,
            outgoing,
            incoming,
            rank,
            connected,
            two_regular,
        }
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, QuiverError> {
        Quiver::new(
            vertices.iter().map(|v| v.to_string()),
            arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexIdx> + '_ {
        (0..self.vertices.len()).map(VertexIdx)
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = ArrowIdx> + '_ {
        (0..self.arrows.len()).map(ArrowIdx)
    }

    /// Arrows in identifier order.
    pub fn arrows_sorted(&self) -> Vec<ArrowIdx> {
        let mut v: Vec<ArrowIdx> = self.arrows().collect();
        v.sort_by_key(|a| self.rank[a.0]);
        v
    }

    pub fn arrow(&self, a: ArrowIdx) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn source(&self, a: ArrowIdx) -> VertexIdx {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowIdx) -> VertexIdx {
        self.arrows[a.0].target
    }

    pub fn is_loop(&self, a: ArrowIdx) -> bool {
        self.source(a) == self.target(a)
    }

    pub fn vertex_id(&self, v: VertexIdx) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_id(&self, a: ArrowIdx) -> &str {
        &self.arrows[a.0].id
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<VertexIdx> {
        self.vertex_lookup.get(id).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<ArrowIdx> {
        self.arrow_lookup.get(id).copied()
    }

    pub fn require_arrow(&self, id: &str) -> Result<ArrowIdx, QuiverError> {
        self.arrow_index(id)
            .ok_or_else(|| QuiverError::UnknownArrow(id.to_string()))
    }

    pub fn require_vertex(&self, id: &str) -> Result<VertexIdx, QuiverError> {
        self.vertex_index(id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_string()))
    }

    /// Position of the arrow when all arrows are sorted by identifier.
    pub fn arrow_rank(&self, a: ArrowIdx) -> usize {
        self.rank[a.0]
    }

    pub fn outgoing(&self, v: VertexIdx) -> &[ArrowIdx] {
        &self.outgoing[v.0]
    }

    pub fn incoming(&self, v: VertexIdx) -> &[ArrowIdx] {
        &self.incoming[v.0]
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_two_regular(&self) -> bool {
        self.two_regular
    }

    pub fn check_two_regular(&self) -> Result<(), QuiverError> {
        match self
            .vertices()
            .find(|&v| self.outgoing(v).len() != 2 || self.incoming(v).len() != 2)
        {
            Some(v) => Err(QuiverError::NotTwoRegular(self.vertex_id(v).to_string())),
            None if self.vertices.is_empty() => Err(QuiverError::TooFewVertices(0)),
            None => Ok(()),
        }
    }

    /// The other arrow with the same source.
    pub fn bar(&self, a: ArrowIdx) -> Result<ArrowIdx, QuiverError> {
        self.check_two_regular()?;
        Ok(other(self.outgoing(self.source(a)), a))
    }

    /// The other arrow with the same target.
    pub fn star(&self, a: ArrowIdx) -> Result<ArrowIdx, QuiverError> {
        self.check_two_regular()?;
        Ok(other(self.incoming(self.target(a)), a))
    }

    /// Relabels vertices and arrows by the given permutations of indices
    /// (`vperm[i]` is the new position of vertex `i`), keeping identifiers.
    pub fn permuted(&self, vperm: &[usize], aperm: &[usize]) -> Quiver {
        let mut vertices = vec![String::new(); self.vertices.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[vperm[i]] = v.clone();
        }
        let mut arrows: Vec<Option<Arrow>> = vec![None; self.arrows.len()];
        for (k, a) in self.arrows.iter().enumerate() {
            arrows[aperm[k]] = Some(Arrow {
                id: a.id.clone(),
                source: VertexIdx(vperm[a.source.0]),
                target: VertexIdx(vperm[a.target.0]),
            });
        }
        let arrows: Vec<Arrow> = arrows.into_iter().map(|a| a.expect("permutation")).collect();
        let vertex_lookup = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexIdx(i)))
            .collect();
        let arrow_lookup = arrows
            .iter()
            .enumerate()
            .map(|(k, a)| (a.id.clone(), ArrowIdx(k)))
            .collect();
        Quiver::assemble(vertices, arrows, vertex_lookup, arrow_lookup)
    }

    /// Same shape with new identifiers.
    pub fn renamed(&self, vertex_ids: &[String], arrow_ids: &[String]) -> Result<Quiver, QuiverError> {
        Quiver::new(
            vertex_ids.iter().cloned(),
            self.arrows.iter().enumerate().map(|(k, a)| {
                (
                    arrow_ids[k].clone(),
                    vertex_ids[a.source.0].clone(),
                    vertex_ids[a.target.0].clone(),
                )
            }),
        )
    }
}

fn other(pair: &[ArrowIdx], a: ArrowIdx) -> ArrowIdx {
    if pair[0] == a {
        pair[1]
    } else {
        pair[0]
    }
}
