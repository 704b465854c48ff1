//! The fixed quivers, surfaces and presentations used throughout: the Markov
//! quiver, the triangle disk, the torus with a cross-cap, and the
//! tetrahedron.

use crate::error::PresentationError;
use crate::field::{scalar_from_i64, FieldDescriptor, Scalar};
use crate::presentation::{deformed_relations, tetrahedral_presentation, weighted_relations, Presentation, WeightData};
use crate::quiver::{Quiver, TriangulationQuiver};
use crate::surface::{SurfaceTriangle, TriangulatedSurface};

fn build(vertices: &[&str], arrows: &[(&str, &str, &str)], f: &[&[&str]]) -> TriangulationQuiver {
    let q = Quiver::from_strs(vertices, arrows).expect("fixed quiver");
    let cycles: Vec<Vec<&str>> = f.iter().map(|c| c.to_vec()).collect();
    TriangulationQuiver::from_cycles(q, &cycles).expect("fixed triangulation")
}

/// Double arrows 1 => 2 => 3 => 1 with f-orbits (alpha gamma delta)(sigma beta rho).
pub fn markov_quiver() -> TriangulationQuiver {
    build(
        &["1", "2", "3"],
        &[
            ("alpha", "1", "2"),
            ("sigma", "1", "2"),
            ("beta", "2", "3"),
            ("gamma", "2", "3"),
            ("delta", "3", "1"),
            ("rho", "3", "1"),
        ],
        &[&["alpha", "gamma", "delta"], &["sigma", "beta", "rho"]],
    )
}

/// Triangle 1 -> 2 -> 3 -> 1 with a border loop at every vertex.
pub fn triangle_disk_quiver() -> TriangulationQuiver {
    build(
        &["1", "2", "3"],
        &[
            ("alpha", "1", "2"),
            ("beta", "2", "3"),
            ("gamma", "3", "1"),
            ("epsilon", "1", "1"),
            ("eta", "2", "2"),
            ("mu", "3", "3"),
        ],
        &[&["alpha", "beta", "gamma"], &["epsilon"], &["eta"], &["mu"]],
    )
}

/// Quiver of the triangulated torus with a cross-cap; g-orbits of lengths 1, 2, 3, 6.
pub fn torus_projective_quiver() -> TriangulationQuiver {
    build(
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("nu", "1", "2"),
            ("xi", "2", "4"),
            ("delta", "4", "1"),
            ("sigma", "1", "4"),
            ("eta", "4", "5"),
            ("omega", "5", "1"),
            ("theta", "5", "2"),
            ("mu", "2", "6"),
            ("rho", "6", "5"),
            ("alpha", "3", "3"),
            ("beta", "3", "6"),
            ("gamma", "6", "3"),
        ],
        &[
            &["alpha", "beta", "gamma"],
            &["rho", "theta", "mu"],
            &["omega", "sigma", "eta"],
            &["nu", "xi", "delta"],
        ],
    )
}

/// The tetrahedron's triangulation quiver; four f-orbits and four g-orbits of length 3.
pub fn tetrahedral_quiver() -> TriangulationQuiver {
    build(
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("alpha", "3", "1"),
            ("beta", "4", "2"),
            ("gamma", "4", "1"),
            ("delta", "1", "5"),
            ("epsilon", "2", "5"),
            ("eta", "5", "4"),
            ("mu", "6", "3"),
            ("nu", "1", "6"),
            ("xi", "5", "3"),
            ("rho", "2", "6"),
            ("sigma", "3", "2"),
            ("omega", "6", "4"),
        ],
        &[
            &["delta", "eta", "gamma"],
            &["rho", "omega", "beta"],
            &["epsilon", "xi", "sigma"],
            &["nu", "mu", "alpha"],
        ],
    )
}

/// Weights on the torus quiver in the order of the orbits of
/// alpha, sigma, eta, beta (lengths 1, 2, 3, 6).
pub fn torus_weights(m: [u32; 4], c: [i64; 4]) -> WeightData {
    let mut w = WeightData::default();
    for ((id, m), c) in ["alpha", "sigma", "eta", "beta"].iter().zip(m).zip(c) {
        w = w.with_m(id, m).with_c(id, scalar_from_i64(c));
    }
    w
}

pub fn markov(m: u32, c: i64) -> Presentation {
    let tq = markov_quiver();
    weighted_relations(&tq, &WeightData::uniform(&tq, m, scalar_from_i64(c))).expect("valid weights")
}

pub fn triangle_disk(m: u32, c: i64) -> Presentation {
    let tq = triangle_disk_quiver();
    weighted_relations(&tq, &WeightData::uniform(&tq, m, scalar_from_i64(c))).expect("valid weights")
}

/// Socle deformation of the triangle disk with border values at vertices 1, 2, 3.
pub fn triangle_disk_deformed(m: u32, c: i64, b: [i64; 3]) -> Presentation {
    let tq = triangle_disk_quiver();
    let mut w = WeightData::uniform(&tq, m, scalar_from_i64(c));
    for (v, b) in ["1", "2", "3"].iter().zip(b) {
        w = w.with_b(v, scalar_from_i64(b));
    }
    deformed_relations(&tq, &w).expect("valid weights")
}

pub fn torus_projective(m: [u32; 4], c: [i64; 4]) -> Result<Presentation, PresentationError> {
    let tq = torus_projective_quiver();
    weighted_relations(&tq, &torus_weights(m, c))
}

pub fn tetrahedral(m: u32, lambda: i64) -> Presentation {
    tetrahedral_presentation(m, scalar_from_i64(lambda)).expect("m >= 1")
}

/// Same presentation with coefficients read in `field`.
pub fn over(p: Presentation, field: FieldDescriptor) -> Presentation {
    p.with_field(field).expect("coefficients representable")
}

/// Scalar helper for tests and examples.
pub fn s(n: i64) -> Scalar {
    scalar_from_i64(n)
}

/// Two triangles (1 2 3), (1 2 3) glued along all three edges.
pub fn markov_sphere() -> TriangulatedSurface {
    TriangulatedSurface::new(
        ["1", "2", "3"],
        vec![
            SurfaceTriangle::ordinary("1", "2", "3"),
            SurfaceTriangle::ordinary("1", "2", "3"),
        ],
        Vec::<String>::new(),
    )
    .expect("fixed surface")
}

/// One triangle (1 2 3) whose three edges form the boundary.
pub fn triangle_disk_surface() -> TriangulatedSurface {
    TriangulatedSurface::new(
        ["1", "2", "3"],
        vec![SurfaceTriangle::ordinary("1", "2", "3")],
        ["1", "2", "3"],
    )
    .expect("fixed surface")
}

/// Boundary of the tetrahedron with triangles (1 5 4), (2 5 3), (2 6 4), (1 6 3).
pub fn tetrahedron_surface() -> TriangulatedSurface {
    TriangulatedSurface::new(
        ["1", "2", "3", "4", "5", "6"],
        vec![
            SurfaceTriangle::ordinary("1", "5", "4"),
            SurfaceTriangle::ordinary("2", "5", "3"),
            SurfaceTriangle::ordinary("2", "6", "4"),
            SurfaceTriangle::ordinary("1", "6", "3"),
        ],
        Vec::<String>::new(),
    )
    .expect("fixed surface")
}

/// Torus with a cross-cap: (1 2 4), (1 4 5), (5 2 6) and the self-folded (3 3 6).
pub fn torus_projective_surface() -> TriangulatedSurface {
    TriangulatedSurface::new(
        ["1", "2", "3", "4", "5", "6"],
        vec![
            SurfaceTriangle::ordinary("1", "2", "4"),
            SurfaceTriangle::ordinary("1", "4", "5"),
            SurfaceTriangle::ordinary("5", "2", "6"),
            SurfaceTriangle::self_folded("3", "6"),
        ],
        Vec::<String>::new(),
    )
    .expect("fixed surface")
}
