//! Directed triangulated surfaces, their triangulation quivers, and the
//! cell complex obtained by gluing one triangle per f-orbit.
//!
//! Gluing: the two sides carrying the same edge are identified so that they
//! run in the same direction with respect to the orientations of their
//! triangles. A self-folded triangle `(a a b)` glues its two `a` sides to each
//! other the same way.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::SurfaceError;
use crate::quiver::{ArrowIdx, Label, Quiver, TriangulationQuiver};

/// One triangle with a chosen orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceTriangle {
    /// Pairwise different edges in cyclic order.
    Ordinary([String; 3]),
    /// `(a a b)` with folded edge `a`.
    SelfFolded { folded: String, other: String },
}

impl SurfaceTriangle {
    pub fn ordinary(a: &str, b: &str, c: &str) -> Self {
        SurfaceTriangle::Ordinary([a.into(), b.into(), c.into()])
    }

    pub fn self_folded(folded: &str, other: &str) -> Self {
        SurfaceTriangle::SelfFolded {
            folded: folded.into(),
            other: other.into(),
        }
    }

    /// Edges in orientation order, one per side.
    pub fn slots(&self) -> [&str; 3] {
        match self {
            SurfaceTriangle::Ordinary([a, b, c]) => [a, b, c],
            SurfaceTriangle::SelfFolded { folded, other } => [folded, folded, other],
        }
    }

    pub fn is_self_folded(&self) -> bool {
        matches!(self, SurfaceTriangle::SelfFolded { .. })
    }
}

/// A validated directed triangulated surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulatedSurface {
    edges: Vec<String>,
    triangles: Vec<SurfaceTriangle>,
    boundary: BTreeSet<String>,
}

impl TriangulatedSurface {
    pub fn new<E, B>(edges: E, triangles: Vec<SurfaceTriangle>, boundary: B) -> Result<Self, SurfaceError>
    where
        E: IntoIterator,
        E::Item: Into<String>,
        B: IntoIterator,
        B::Item: Into<String>,
    {
        let edges: Vec<String> = edges.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e.clone()) {
                return Err(SurfaceError::DuplicateEdge(e.clone()));
            }
        }
        if edges.len() < 3 {
            return Err(SurfaceError::TooFewEdges(edges.len()));
        }
        let mut boundary_set = BTreeSet::new();
        for b in boundary {
            let b: String = b.into();
            if !seen.contains(&b) {
                return Err(SurfaceError::UnknownEdge(b));
            }
            if !boundary_set.insert(b.clone()) {
                return Err(SurfaceError::DuplicateEdge(b));
            }
        }
        let mut count: BTreeMap<&str, usize> = BTreeMap::new();
        let mut folded = BTreeSet::new();
        for (index, t) in triangles.iter().enumerate() {
            let slots = t.slots();
            for s in slots {
                if !seen.contains(s) {
                    return Err(SurfaceError::UnknownEdge(s.to_string()));
                }
                *count.entry(s).or_default() += 1;
            }
            match t {
                SurfaceTriangle::Ordinary([a, b, c]) if a == b || b == c || a == c => {
                    return Err(SurfaceError::MalformedTriangle {
                        index,
                        reason: "edges of an ordinary triangle must be pairwise different".into(),
                    })
                }
                SurfaceTriangle::SelfFolded { folded: a, other: b } => {
                    if a == b {
                        return Err(SurfaceError::MalformedTriangle {
                            index,
                            reason: "folded and other edge coincide".into(),
                        });
                    }
                    if boundary_set.contains(a) {
                        return Err(SurfaceError::MalformedTriangle {
                            index,
                            reason: format!("folded edge `{a}` cannot lie on the boundary"),
                        });
                    }
                    folded.insert(a.clone());
                }
                _ => {}
            }
        }
        for e in &edges {
            let expected = if boundary_set.contains(e) { 1 } else { 2 };
            let c = count.get(e.as_str()).copied().unwrap_or(0);
            if c != expected {
                return Err(SurfaceError::Multiplicity {
                    edge: e.clone(),
                    count: c,
                    expected,
                });
            }
        }
        Ok(TriangulatedSurface {
            edges,
            triangles,
            boundary: boundary_set,
        })
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn triangles(&self) -> &[SurfaceTriangle] {
        &self.triangles
    }

    pub fn boundary(&self) -> &BTreeSet<String> {
        &self.boundary
    }

    /// Invariants of the glued cell complex.
    pub fn cell_complex(&self) -> CellComplexReport {
        CellComplex::glue(self).report()
    }
}

/// Topological data of a glued surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplexReport {
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub boundary_components: usize,
    pub face_count: usize,
    pub edge_count: usize,
    pub vertex_count: usize,
}

struct UnionFind {
    parent: Vec<usize>,
    /// Parity relative to the parent, used for orientation classes.
    parity: Vec<bool>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, par) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= par;
        (root, self.parity[x])
    }

    /// Joins with the constraint `parity(x) ^ parity(y) == odd`; returns false on contradiction.
    fn union(&mut self, x: usize, y: usize, odd: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == odd;
        }
        self.parent[rx] = ry;
        self.parity[rx] = px ^ py ^ odd;
        true
    }

    fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x).0 == x).count()
    }
}

struct CellComplex {
    faces: usize,
    edges: usize,
    corners: UnionFind,
    orientable: bool,
    /// Boundary sides as (start corner, end corner).
    boundary_sides: Vec<(usize, usize)>,
}

impl CellComplex {
    /// Side `k` of triangle `t` runs from corner `3t + k` to corner `3t + k + 1 mod 3`.
    fn glue(s: &TriangulatedSurface) -> Self {
        let corner = |t: usize, k: usize| 3 * t + k % 3;
        let mut sides: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
        for (t, tri) in s.triangles.iter().enumerate() {
            for (k, e) in tri.slots().into_iter().enumerate() {
                sides.entry(e).or_default().push((t, k));
            }
        }
        let mut corners = UnionFind::new(3 * s.triangles.len());
        let mut faces = UnionFind::new(s.triangles.len());
        let mut orientable = true;
        let mut boundary_sides = Vec::new();
        for slots in sides.values() {
            match slots.as_slice() {
                [(t1, k1), (t2, k2)] => {
                    corners.union(corner(*t1, *k1), corner(*t2, *k2), false);
                    corners.union(corner(*t1, k1 + 1), corner(*t2, k2 + 1), false);
                    // same-direction gluing keeps orientation only if one face is reversed
                    orientable &= faces.union(*t1, *t2, true);
                }
                [(t, k)] => boundary_sides.push((corner(*t, *k), corner(*t, k + 1))),
                _ => unreachable!("multiplicities are validated"),
            }
        }
        CellComplex {
            faces: s.triangles.len(),
            edges: sides.len(),
            corners,
            orientable,
            boundary_sides,
        }
    }

    fn report(mut self) -> CellComplexReport {
        let vertex_count = self.corners.classes();
        let sides = std::mem::take(&mut self.boundary_sides);
        let mut components = UnionFind::new(self.corners.parent.len());
        let mut touched = BTreeSet::new();
        for (a, b) in sides {
            let (ra, _) = self.corners.find(a);
            let (rb, _) = self.corners.find(b);
            components.union(ra, rb, false);
            touched.insert(ra);
            touched.insert(rb);
        }
        let boundary_components = touched
            .iter()
            .map(|&v| components.find(v).0)
            .collect::<BTreeSet<_>>()
            .len();
        CellComplexReport {
            euler_characteristic: vertex_count as i64 - self.edges as i64 + self.faces as i64,
            orientable: self.orientable,
            boundary_components,
            face_count: self.faces,
            edge_count: self.edges,
            vertex_count,
        }
    }
}

/// Same as [`TriangulatedSurface::new`].
pub fn validate_surface(
    edges: Vec<String>,
    triangles: Vec<SurfaceTriangle>,
    boundary: Vec<String>,
) -> Result<TriangulatedSurface, SurfaceError> {
    TriangulatedSurface::new(edges, triangles, boundary)
}

/// Q(S, T): vertices are the edges; each triangle contributes a 3-cycle f-orbit,
/// each boundary edge an f-fixed loop.
///
/// Arrows are named `t{i}_{k}` for side `k` of triangle `i` and `b_{e}` for
/// the loop at boundary edge `e`.
pub fn quiver_of_surface(s: &TriangulatedSurface) -> Result<TriangulationQuiver, SurfaceError> {
    let mut arrows = Vec::new();
    let mut cycles: Vec<Vec<String>> = Vec::new();
    for (t, tri) in s.triangles.iter().enumerate() {
        let slots = tri.slots();
        let mut cycle = Vec::with_capacity(3);
        for k in 0..3 {
            let id = format!("t{}_{}", t + 1, k + 1);
            arrows.push((id.clone(), slots[k].to_string(), slots[(k + 1) % 3].to_string()));
            cycle.push(id);
        }
        cycles.push(cycle);
    }
    for e in &s.boundary {
        let id = format!("b_{e}");
        arrows.push((id.clone(), e.clone(), e.clone()));
        cycles.push(vec![id]);
    }
    let q = Quiver::new(s.edges.iter().cloned(), arrows)?;
    Ok(TriangulationQuiver::from_cycles(q, &cycles)?)
}

/// A directed triangulated surface whose quiver is `tq`: one triangle per
/// 3-cycle of f (self-folded when it visits a vertex twice), one boundary
/// edge per f-fixed loop.
pub fn surface_from_quiver(tq: &TriangulationQuiver) -> TriangulatedSurface {
    let q = tq.quiver();
    let mut triangles = Vec::new();
    let mut boundary = Vec::new();
    for orbit in tq.f_orbits() {
        match orbit.as_slice() {
            [a] => boundary.push(q.vertex_id(q.source(*a)).to_string()),
            [a, b, c] => {
                let v = |x: ArrowIdx| q.vertex_id(q.source(x)).to_string();
                let (x, y, z) = (v(*a), v(*b), v(*c));
                triangles.push(if x == y {
                    SurfaceTriangle::SelfFolded { folded: x, other: z }
                } else if y == z {
                    SurfaceTriangle::SelfFolded { folded: y, other: x }
                } else if z == x {
                    SurfaceTriangle::SelfFolded { folded: z, other: y }
                } else {
                    SurfaceTriangle::Ordinary([x, y, z])
                });
            }
            _ => unreachable!("f has order three"),
        }
    }
    TriangulatedSurface::new(q.vertex_ids().to_vec(), triangles, boundary)
        .expect("a triangulation quiver yields a valid surface")
}

/// Cell-complex invariants of the surface reconstructed from `tq`.
pub fn surface_of_quiver(tq: &TriangulationQuiver) -> CellComplexReport {
    surface_from_quiver(tq).cell_complex()
}

/// Draws per [`random_surface`] before giving up.
pub const RANDOM_SURFACE_ATTEMPTS: usize = 10_000;

/// A random directed triangulated surface with `ordinary` ordinary triangles,
/// `folded` self-folded ones and at most `max_boundary` boundary edges.
///
/// Sides are paired uniformly at random; draws that break a triangle or give
/// a disconnected or too small quiver are rejected. `None` when every one of
/// [`RANDOM_SURFACE_ATTEMPTS`] draws is rejected, as happens for parameters
/// no surface satisfies.
pub fn random_surface<R: Rng + ?Sized>(
    rng: &mut R,
    ordinary: usize,
    folded: usize,
    max_boundary: usize,
) -> Option<TriangulatedSurface> {
    if ordinary + folded == 0 {
        return None;
    }
    (0..RANDOM_SURFACE_ATTEMPTS).find_map(|_| try_random_surface(rng, ordinary, folded, max_boundary))
}

fn try_random_surface<R: Rng + ?Sized>(
    rng: &mut R,
    ordinary: usize,
    folded: usize,
    max_boundary: usize,
) -> Option<TriangulatedSurface> {
    // free sides: every side of an ordinary triangle, the `other` side of a self-folded one
    let mut free: Vec<(usize, usize)> = (0..ordinary)
        .flat_map(|t| (0..3).map(move |k| (t, k)))
        .chain((0..folded).map(|t| (ordinary + t, 2)))
        .collect();
    free.shuffle(rng);
    let parity = free.len() % 2;
    let boundary_count = {
        let choices: Vec<usize> = (0..=max_boundary.min(free.len())).filter(|b| b % 2 == parity).collect();
        *choices.choose(rng)?
    };
    let mut names: BTreeMap<(usize, usize), String> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut boundary = Vec::new();
    let mut next = 1usize;
    let mut fresh = |edges: &mut Vec<String>| {
        let id = next.to_string();
        next += 1;
        edges.push(id.clone());
        id
    };
    let (bnd, rest) = free.split_at(boundary_count);
    for slot in bnd {
        let e = fresh(&mut edges);
        boundary.push(e.clone());
        names.insert(*slot, e);
    }
    for pair in rest.chunks(2) {
        let e = fresh(&mut edges);
        names.insert(pair[0], e.clone());
        names.insert(pair[1], e);
    }
    let mut triangles = Vec::with_capacity(ordinary + folded);
    for t in 0..ordinary {
        let mut slots = [0, 1, 2].map(|k| names[&(t, k)].clone());
        if rng.gen_bool(0.5) {
            slots.reverse();
        }
        triangles.push(SurfaceTriangle::Ordinary(slots));
    }
    for t in 0..folded {
        let a = fresh(&mut edges);
        triangles.push(SurfaceTriangle::SelfFolded {
            folded: a,
            other: names[&(ordinary + t, 2)].clone(),
        });
    }
    let s = TriangulatedSurface::new(edges, triangles, boundary).ok()?;
    quiver_of_surface(&s).ok()?;
    Some(s)
}

/// On-disk triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TriangleFile {
    Ordinary { edges: [Label; 3], orient: String },
    SelfFolded { folded: Label, other: Label },
}

/// On-disk surface: `{"edges": [...], "triangles": [...], "boundary": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub edges: Vec<Label>,
    pub triangles: Vec<TriangleFile>,
    #[serde(default)]
    pub boundary: Vec<Label>,
}

impl SurfaceFile {
    pub fn from_surface(s: &TriangulatedSurface) -> Self {
        let text = |x: &str| Label::Text(x.to_string());
        SurfaceFile {
            edges: s.edges.iter().map(|e| text(e)).collect(),
            triangles: s
                .triangles
                .iter()
                .map(|t| match t {
                    SurfaceTriangle::Ordinary(e) => TriangleFile::Ordinary {
                        edges: [text(&e[0]), text(&e[1]), text(&e[2])],
                        orient: "abc".into(),
                    },
                    SurfaceTriangle::SelfFolded { folded, other } => TriangleFile::SelfFolded {
                        folded: text(folded),
                        other: text(other),
                    },
                })
                .collect(),
            boundary: s.boundary.iter().map(|e| text(e)).collect(),
        }
    }

    pub fn to_surface(&self) -> Result<TriangulatedSurface, SurfaceError> {
        let mut triangles = Vec::with_capacity(self.triangles.len());
        for (index, t) in self.triangles.iter().enumerate() {
            triangles.push(match t {
                TriangleFile::Ordinary { edges, orient } => {
                    let [a, b, c] = edges.clone().map(|l| l.to_string());
                    match orient.as_str() {
                        "abc" => SurfaceTriangle::Ordinary([a, b, c]),
                        "cba" => SurfaceTriangle::Ordinary([c, b, a]),
                        other => {
                            return Err(SurfaceError::MalformedTriangle {
                                index,
                                reason: format!("orientation `{other}` is neither abc nor cba"),
                            })
                        }
                    }
                }
                TriangleFile::SelfFolded { folded, other } => SurfaceTriangle::SelfFolded {
                    folded: folded.to_string(),
                    other: other.to_string(),
                },
            });
        }
        TriangulatedSurface::new(
            self.edges.iter().map(ToString::to_string),
            triangles,
            self.boundary.iter().map(ToString::to_string),
        )
    }
}
