use std::collections::BTreeMap;

use crate::error::QuiverError;

use super::{ArrowIdx, ArrowPermutation, Quiver, VertexIdx};

/// A g-orbit listed from its representative (least arrow id) along g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub arrows: Vec<ArrowIdx>,
}

impl Orbit {
    pub fn representative(&self) -> ArrowIdx {
        self.arrows[0]
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Vertices carrying an f-fixed loop.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Border {
    pub loops: BTreeMap<VertexIdx, ArrowIdx>,
}

impl Border {
    pub fn vertices(&self) -> impl Iterator<Item = VertexIdx> + '_ {
        self.loops.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }

    pub fn contains(&self, v: VertexIdx) -> bool {
        self.loops.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.loops.len()
    }
}

#[derive(Debug, Clone)]
pub struct TriangulationQuiver {
    quiver: Quiver,
    f: ArrowPermutation,
    g: ArrowPermutation,
    bar: Vec<ArrowIdx>,
    star: Vec<ArrowIdx>,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
}

/// Checks conditions (a), (b), (c) and the standing assumptions, then derives g.
pub fn validate_triangulation(q: Quiver, f: ArrowPermutation) -> Result<TriangulationQuiver, QuiverError> {
    TriangulationQuiver::new(q, f)
}

impl TriangulationQuiver {
    pub fn new(quiver: Quiver, f: ArrowPermutation) -> Result<Self, QuiverError> {
        if quiver.vertex_count() < 3 {
            return Err(QuiverError::TooFewVertices(quiver.vertex_count()));
        }
        if !quiver.is_two_regular() {
            quiver.check_two_regular()?;
        }
        if !quiver.is_connected() {
            return Err(QuiverError::NotConnected);
        }
        if f.len() != quiver.arrow_count() {
            return Err(QuiverError::NotBijection(format!(
                "f has {} entries for {} arrows",
                f.len(),
                quiver.arrow_count()
            )));
        }
        for a in quiver.arrows_sorted() {
            let fa = f.apply(a);
            if quiver.source(fa) != quiver.target(a) {
                return Err(QuiverError::SourceMismatch {
                    arrow: quiver.arrow_id(a).to_string(),
                    image: quiver.arrow_id(fa).to_string(),
                });
            }
        }
        for a in quiver.arrows_sorted() {
            if f.pow(a, 3) != a {
                return Err(QuiverError::NotOrderThree(quiver.arrow_id(a).to_string()));
            }
        }
        let bar: Vec<ArrowIdx> = quiver.arrows().map(|a| quiver.bar(a)).collect::<Result<_, _>>()?;
        let star: Vec<ArrowIdx> = quiver.arrows().map(|a| quiver.star(a)).collect::<Result<_, _>>()?;
        let g = ArrowPermutation::from_map(quiver.arrows().map(|a| bar[f.apply(a).0]).collect())?;
        let orbits: Vec<Orbit> = g.cycles(&quiver).into_iter().map(|arrows| Orbit { arrows }).collect();
        let mut orbit_of = vec![0; quiver.arrow_count()];
        for (k, o) in orbits.iter().enumerate() {
            for a in &o.arrows {
                orbit_of[a.0] = k;
            }
        }
        let tq = TriangulationQuiver {
            quiver,
            f,
            g,
            bar,
            star,
            orbits,
            orbit_of,
        };
        for a in tq.quiver.arrows() {
            let lhs = tq.g.pow(a, tq.n(a) - 1);
            let rhs = tq.f.pow(tq.bar(a), 2);
            if lhs != rhs {
                return Err(QuiverError::OrbitIdentity(tq.quiver.arrow_id(a).to_string()));
            }
        }
        Ok(tq)
    }

    /// Builds from f given as cycles of arrow identifiers.
    pub fn from_cycles<S: AsRef<str>>(quiver: Quiver, cycles: &[Vec<S>]) -> Result<Self, QuiverError> {
        let f = ArrowPermutation::from_cycles(&quiver, cycles)?;
        Self::new(quiver, f)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn f_perm(&self) -> &ArrowPermutation {
        &self.f
    }

    pub fn g_perm(&self) -> &ArrowPermutation {
        &self.g
    }

    pub fn f(&self, a: ArrowIdx) -> ArrowIdx {
        self.f.apply(a)
    }

    pub fn g(&self, a: ArrowIdx) -> ArrowIdx {
        self.g.apply(a)
    }

    pub fn bar(&self, a: ArrowIdx) -> ArrowIdx {
        self.bar[a.0]
    }

    pub fn star(&self, a: ArrowIdx) -> ArrowIdx {
        self.star[a.0]
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_index(&self, a: ArrowIdx) -> usize {
        self.orbit_of[a.0]
    }

    pub fn orbit(&self, a: ArrowIdx) -> &Orbit {
        &self.orbits[self.orbit_of[a.0]]
    }

    /// n_a, the length of the g-orbit of `a`.
    pub fn n(&self, a: ArrowIdx) -> usize {
        self.orbit(a).len()
    }

    pub fn f_orbits(&self) -> Vec<Vec<ArrowIdx>> {
        self.f.cycles(&self.quiver)
    }

    pub fn is_border_loop(&self, a: ArrowIdx) -> bool {
        self.f(a) == a
    }

    pub fn border(&self) -> Border {
        Border {
            loops: self
                .quiver
                .arrows()
                .filter(|&a| self.is_border_loop(a))
                .map(|a| (self.quiver.source(a), a))
                .collect(),
        }
    }

    /// Sorted multiset of g-orbit lengths.
    pub fn g_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.orbits.iter().map(Orbit::len).collect();
        v.sort_unstable();
        v
    }

    pub fn f_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.f_orbits().iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn markov_single_g_orbit() {
        let tq = instances::markov_quiver();
        assert_eq!(tq.orbits().len(), 1);
        assert_eq!(tq.orbits()[0].len(), 6);
        let ids: Vec<&str> = tq.orbits()[0].arrows.iter().map(|&a| tq.quiver().arrow_id(a)).collect();
        assert_eq!(ids, ["alpha", "beta", "delta", "sigma", "gamma", "rho"]);
        assert!(tq.border().is_empty());
    }

    #[test]
    fn triangle_disk_border() {
        let tq = instances::triangle_disk_quiver();
        assert_eq!(tq.orbits().len(), 1);
        let border = tq.border();
        assert_eq!(border.len(), 3);
        let loops: Vec<&str> = border.loops.values().map(|&a| tq.quiver().arrow_id(a)).collect();
        assert_eq!(loops, ["epsilon", "eta", "mu"]);
    }

    #[test]
    fn torus_border_empty() {
        let tq = instances::torus_projective_quiver();
        assert!(tq.border().is_empty());
        assert_eq!(tq.g_profile(), vec![1, 2, 3, 6]);
    }

    #[test]
    fn identity_f_fails_condition_b() {
        let tq = instances::markov_quiver();
        let q = tq.quiver().clone();
        let n = q.arrow_count();
        assert!(matches!(
            TriangulationQuiver::new(q, ArrowPermutation::identity(n)),
            Err(QuiverError::SourceMismatch { .. })
        ));
    }

    #[test]
    fn six_cycle_fails_condition_c() {
        let q = instances::markov_quiver().quiver().clone();
        let err = TriangulationQuiver::from_cycles(q, &[vec!["alpha", "gamma", "delta", "sigma", "beta", "rho"]])
            .unwrap_err();
        assert!(matches!(err, QuiverError::NotOrderThree(_)));
        assert!(err.to_string().contains("condition (c)"));
    }
}
