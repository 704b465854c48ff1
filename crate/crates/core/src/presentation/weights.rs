use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::PresentationError;
use crate::field::{format_scalar, scalar_from_i64, Scalar};
use crate::quiver::{ArrowIdx, TriangulationQuiver, VertexIdx};

use super::Path;

/// Weight, parameter and border functions.
///
/// `m` and `c` are keyed by arrow identifier; any arrow of a g-orbit names
/// that orbit. `b` is keyed by vertex identifier. Scalars are kept as
/// `num/den` strings on disk.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightData {
    pub m: BTreeMap<String, u32>,
    #[serde(with = "scalar_map")]
    pub c: BTreeMap<String, Scalar>,
    #[serde(default, with = "scalar_map", skip_serializing_if = "BTreeMap::is_empty")]
    pub b: BTreeMap<String, Scalar>,
}

mod scalar_map {
    use std::collections::BTreeMap;

    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use crate::field::{format_scalar, parse_scalar, Scalar};

    pub fn serialize<S: Serializer>(map: &BTreeMap<String, Scalar>, s: S) -> Result<S::Ok, S::Error> {
        map.iter()
            .map(|(k, v)| (k.clone(), format_scalar(v)))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Scalar>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| parse_scalar(&v).map(|s| (k, s)).map_err(D::Error::custom))
            .collect()
    }
}

impl WeightData {
    /// The same `m` and `c` on every g-orbit, no border function.
    pub fn uniform(tq: &TriangulationQuiver, m: u32, c: Scalar) -> Self {
        let q = tq.quiver();
        let mut w = WeightData::default();
        for o in tq.orbits() {
            let id = q.arrow_id(o.representative()).to_string();
            w.m.insert(id.clone(), m);
            w.c.insert(id, c.clone());
        }
        w
    }

    pub fn with_m(mut self, arrow: &str, m: u32) -> Self {
        self.m.insert(arrow.to_string(), m);
        self
    }

    pub fn with_c(mut self, arrow: &str, c: Scalar) -> Self {
        self.c.insert(arrow.to_string(), c);
        self
    }

    pub fn with_b(mut self, vertex: &str, b: Scalar) -> Self {
        self.b.insert(vertex.to_string(), b);
        self
    }

    /// True when no border value is nonzero.
    pub fn border_is_zero(&self) -> bool {
        self.b.values().all(Zero::is_zero)
    }

    /// Human-readable summary, e.g. `m{alpha=1} c{alpha=2}`.
    pub fn summary(&self) -> String {
        let join = |it: Vec<String>| it.join(",");
        let mut s = format!(
            "m{{{}}} c{{{}}}",
            join(self.m.iter().map(|(k, v)| format!("{k}={v}")).collect()),
            join(
                self.c
                    .iter()
                    .map(|(k, v)| format!("{k}={}", format_scalar(v)))
                    .collect()
            )
        );
        if !self.b.is_empty() {
            s.push_str(&format!(
                " b{{{}}}",
                join(
                    self.b
                        .iter()
                        .map(|(k, v)| format!("{k}={}", format_scalar(v)))
                        .collect()
                )
            ));
        }
        s
    }

    /// Resolves keys to orbits and vertices and checks the standing assumptions.
    pub fn resolve(&self, tq: &TriangulationQuiver) -> Result<ResolvedWeights, PresentationError> {
        let q = tq.quiver();
        let orbits = tq.orbits().len();
        let mut m: Vec<Option<u32>> = vec![None; orbits];
        let mut c: Vec<Option<Scalar>> = vec![None; orbits];
        for (id, &val) in &self.m {
            let k = tq.orbit_index(q.require_arrow(id)?);
            if m[k].is_some_and(|prev| prev != val) {
                return Err(PresentationError::UnknownOrbit(format!("{id} (conflicting weight)")));
            }
            m[k] = Some(val);
        }
        for (id, val) in &self.c {
            let k = tq.orbit_index(q.require_arrow(id)?);
            if c[k].as_ref().is_some_and(|prev| prev != val) {
                return Err(PresentationError::UnknownOrbit(format!("{id} (conflicting parameter)")));
            }
            c[k] = Some(val.clone());
        }
        let mut ms = Vec::with_capacity(orbits);
        let mut cs = Vec::with_capacity(orbits);
        for (k, o) in tq.orbits().iter().enumerate() {
            let rep = q.arrow_id(o.representative()).to_string();
            let mk = m[k].ok_or_else(|| PresentationError::MissingWeight {
                what: "weight",
                arrow: rep.clone(),
            })?;
            if (mk as usize) * o.len() < 3 || mk == 0 {
                return Err(PresentationError::WeightConstraint {
                    arrow: rep,
                    m: mk,
                    n: o.len(),
                });
            }
            let ck = c[k].clone().ok_or_else(|| PresentationError::MissingWeight {
                what: "parameter",
                arrow: rep.clone(),
            })?;
            if ck.is_zero() {
                return Err(PresentationError::ZeroParameter(rep));
            }
            ms.push(mk);
            cs.push(ck);
        }
        let border = tq.border();
        let mut b = BTreeMap::new();
        for (vid, val) in &self.b {
            let v = q.require_vertex(vid)?;
            if !border.contains(v) {
                return Err(PresentationError::NotBorder(vid.clone()));
            }
            b.insert(v, val.clone());
        }
        Ok(ResolvedWeights { m: ms, c: cs, b })
    }
}

/// Weights indexed by g-orbit position and border vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedWeights {
    pub m: Vec<u32>,
    pub c: Vec<Scalar>,
    pub b: BTreeMap<VertexIdx, Scalar>,
}

impl ResolvedWeights {
    pub fn m_of(&self, tq: &TriangulationQuiver, a: ArrowIdx) -> usize {
        self.m[tq.orbit_index(a)] as usize
    }

    pub fn c_of(&self, tq: &TriangulationQuiver, a: ArrowIdx) -> &Scalar {
        &self.c[tq.orbit_index(a)]
    }

    pub fn b_at(&self, v: VertexIdx) -> Scalar {
        self.b.get(&v).cloned().unwrap_or_else(|| scalar_from_i64(0))
    }

    /// Longest m*n over all orbits.
    pub fn max_cycle(&self, tq: &TriangulationQuiver) -> usize {
        tq.orbits()
            .iter()
            .zip(&self.m)
            .map(|(o, &m)| o.len() * m as usize)
            .max()
            .unwrap_or(0)
    }

    /// Sum over g-orbits of m * n^2.
    pub fn expected_dimension(&self, tq: &TriangulationQuiver) -> usize {
        tq.orbits()
            .iter()
            .zip(&self.m)
            .map(|(o, &m)| m as usize * o.len() * o.len())
            .sum()
    }
}

fn g_walk(tq: &TriangulationQuiver, a: ArrowIdx, len: usize) -> Vec<ArrowIdx> {
    std::iter::successors(Some(a), |&x| Some(tq.g(x))).take(len).collect()
}

/// A_a: the g-walk from `a` of length m_a n_a - 1.
pub fn a_path(tq: &TriangulationQuiver, w: &ResolvedWeights, a: ArrowIdx) -> Path {
    let len = w.m_of(tq, a) * tq.n(a) - 1;
    walk_path(tq, a, len)
}

/// B_a: the full g-walk from `a` of length m_a n_a.
pub fn b_path(tq: &TriangulationQuiver, w: &ResolvedWeights, a: ArrowIdx) -> Path {
    let len = w.m_of(tq, a) * tq.n(a);
    walk_path(tq, a, len)
}

fn walk_path(tq: &TriangulationQuiver, a: ArrowIdx, len: usize) -> Path {
    if len == 0 {
        return Path::stationary(tq.quiver().source(a));
    }
    Path::from_arrows(tq.quiver(), g_walk(tq, a, len)).expect("g-walks compose")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn markov_a_sigma() {
        let tq = instances::markov_quiver();
        let w = WeightData::uniform(&tq, 1, scalar_from_i64(1)).resolve(&tq).unwrap();
        let q = tq.quiver();
        let sigma = q.arrow_index("sigma").unwrap();
        assert_eq!(a_path(&tq, &w, sigma).display(q), "sigma*gamma*rho*alpha*beta");
        assert_eq!(b_path(&tq, &w, sigma).len(), 6);
    }

    #[test]
    fn triangle_disk_a_epsilon_m2() {
        let tq = instances::triangle_disk_quiver();
        let w = WeightData::uniform(&tq, 2, scalar_from_i64(1)).resolve(&tq).unwrap();
        let q = tq.quiver();
        let eps = q.arrow_index("epsilon").unwrap();
        let a = a_path(&tq, &w, eps);
        assert_eq!(a.len(), 11);
        assert_eq!(
            a.display(q),
            "epsilon*alpha*eta*beta*mu*gamma*epsilon*alpha*eta*beta*mu"
        );
    }

    #[test]
    fn loop_orbit_powers() {
        let tq = instances::torus_projective_quiver();
        let q = tq.quiver();
        let w = instances::torus_weights([3, 2, 1, 1], [1, 1, 1, 1])
            .resolve(&tq)
            .unwrap();
        let alpha = q.arrow_index("alpha").unwrap();
        assert_eq!(a_path(&tq, &w, alpha).display(q), "alpha*alpha");
        assert_eq!(b_path(&tq, &w, alpha).display(q), "alpha*alpha*alpha");
    }

    #[test]
    fn weight_constraint() {
        let tq = instances::torus_projective_quiver();
        let w = instances::torus_weights([2, 2, 1, 1], [1, 1, 1, 1]);
        assert!(matches!(
            w.resolve(&tq),
            Err(PresentationError::WeightConstraint { .. })
        ));
        let tq = instances::markov_quiver();
        let w = WeightData::uniform(&tq, 1, scalar_from_i64(0));
        assert!(matches!(w.resolve(&tq), Err(PresentationError::ZeroParameter(_))));
    }

    #[test]
    fn a_b_identities() {
        for tq in [
            instances::markov_quiver(),
            instances::triangle_disk_quiver(),
            instances::torus_projective_quiver(),
        ] {
            let w = WeightData::uniform(&tq, 3, scalar_from_i64(1)).resolve(&tq).unwrap();
            for a in tq.quiver().arrows() {
                let lhs = Path::from_arrows(tq.quiver(), vec![a])
                    .unwrap()
                    .concat(&a_path(&tq, &w, tq.g(a)))
                    .unwrap();
                assert_eq!(lhs, b_path(&tq, &w, a));
            }
        }
    }
}
