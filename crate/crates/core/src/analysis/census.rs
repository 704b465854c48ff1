use serde::{Deserialize, Serialize};

use crate::algebra::FiniteDimAlgebra;
use crate::error::QuiverError;
use crate::field::{format_scalar, Field};
use crate::linalg::{left_nullspace, rank, Matrix};
use crate::presentation::Path;
use crate::quiver::{ArrowIdx, Quiver, VertexIdx};

/// Shape of the two minimal relations on one side of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationClass {
    CC,
    CZ,
    ZZ,
    Other,
}

/// `c1 p + c2 q` lies in `J^3`, neither path does.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeC {
    pub paths: [usize; 2],
    pub coefficients: [String; 2],
}

/// Length-two paths starting (or ending) at a vertex, modulo `J^3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCensus {
    pub paths: Vec<(ArrowIdx, ArrowIdx)>,
    pub labels: Vec<String>,
    /// `dim e_i J^2 / e_i J^3` (or `J^2 e_i / J^3 e_i`).
    pub layer_dim: usize,
    /// Number of independent linear relations among the paths.
    pub relations: usize,
    pub zero: Vec<usize>,
    pub type_c: Vec<TypeC>,
    /// Paths with nonzero coefficient in some relation.
    pub involved: Vec<usize>,
    pub class: RelationClass,
}

impl SideCensus {
    pub fn is_zero(&self, p: (ArrowIdx, ArrowIdx)) -> bool {
        self.position(p).is_some_and(|k| self.zero.contains(&k))
    }

    /// Whether some type C relation pairs `p` with `q`.
    pub fn pairs(&self, p: (ArrowIdx, ArrowIdx), q: (ArrowIdx, ArrowIdx)) -> bool {
        match (self.position(p), self.position(q)) {
            (Some(x), Some(y)) => self.type_c.iter().any(|c| c.paths == [x, y] || c.paths == [y, x]),
            _ => false,
        }
    }

    pub fn position(&self, p: (ArrowIdx, ArrowIdx)) -> Option<usize> {
        self.paths.iter().position(|&x| x == p)
    }

    pub fn involves(&self, p: (ArrowIdx, ArrowIdx)) -> bool {
        self.position(p).is_some_and(|k| self.involved.contains(&k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCensus {
    pub vertex: String,
    pub outgoing: Vec<String>,
    pub start: SideCensus,
    pub end: SideCensus,
    pub double_arrows: bool,
    pub loops: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTypeReport {
    pub vertices: Vec<VertexCensus>,
}

impl RelationTypeReport {
    /// Both sides of every vertex carry exactly two independent relations,
    /// each of type C or Z.
    pub fn two_relations_everywhere(&self) -> bool {
        self.vertices.iter().all(|v| {
            [&v.start, &v.end]
                .iter()
                .all(|s| s.relations == 2 && s.class != RelationClass::Other)
        })
    }
}

fn label(q: &Quiver, (a, b): (ArrowIdx, ArrowIdx)) -> String {
    format!("{}{}", q.arrow_id(a), q.arrow_id(b))
}

fn paths_from(q: &Quiver, i: VertexIdx) -> Vec<(ArrowIdx, ArrowIdx)> {
    let mut out: Vec<_> = q
        .outgoing(i)
        .iter()
        .flat_map(|&a| q.outgoing(q.target(a)).iter().map(move |&b| (a, b)))
        .collect();
    out.sort_by_key(|&(a, b)| (q.arrow_rank(a), q.arrow_rank(b)));
    out
}

fn paths_to(q: &Quiver, i: VertexIdx) -> Vec<(ArrowIdx, ArrowIdx)> {
    let mut out: Vec<_> = q
        .incoming(i)
        .iter()
        .flat_map(|&b| q.incoming(q.source(b)).iter().map(move |&a| (a, b)))
        .collect();
    out.sort_by_key(|&(a, b)| (q.arrow_rank(a), q.arrow_rank(b)));
    out
}

/// Image of `ab` in `e_u A / e_u J^3`, placed in the block of its source.
fn images<F: Field>(a: &FiniteDimAlgebra<F>, paths: &[(ArrowIdx, ArrowIdx)]) -> Matrix<F::Elem> {
    let q = a.quiver();
    let f = a.field();
    let mut sources: Vec<VertexIdx> = paths.iter().map(|&(x, _)| q.source(x)).collect();
    sources.sort();
    sources.dedup();
    let mut offset = Vec::with_capacity(sources.len());
    let mut total = 0;
    let mut cubes = Vec::with_capacity(sources.len());
    for &u in &sources {
        offset.push(total);
        total += a.vertex_basis(u).len();
        cubes.push(a.radical_power(u, 3));
    }
    let rows = paths
        .iter()
        .map(|&(x, y)| {
            let u = q.source(x);
            let k = sources.binary_search(&u).expect("listed");
            let global = a.path_element(&Path::from_arrows(q, vec![x, y]).expect("composable"));
            let local: Vec<F::Elem> = a.vertex_basis(u).iter().map(|&g| global[g].clone()).collect();
            let reduced = cubes[k].reduce(local);
            let mut row = vec![f.zero(); total];
            for (j, c) in reduced.into_iter().enumerate() {
                row[offset[k] + j] = c;
            }
            row
        })
        .collect();
    Matrix::from_rows(total, rows)
}

fn side<F: Field>(a: &FiniteDimAlgebra<F>, paths: Vec<(ArrowIdx, ArrowIdx)>) -> SideCensus {
    let q = a.quiver();
    let f = a.field();
    let m = images(a, &paths);
    let layer_dim = rank(f, &m);
    let relations = paths.len() - layer_dim;
    let deps = left_nullspace(f, &m);
    let involved: Vec<usize> = (0..paths.len())
        .filter(|&k| deps.row_vecs().iter().any(|r| !f.is_zero(&r[k])))
        .collect();
    let zero: Vec<usize> = (0..paths.len())
        .filter(|&k| m.row(k).iter().all(|c| f.is_zero(c)))
        .collect();
    let mut type_c = Vec::new();
    for x in 0..paths.len() {
        for y in x + 1..paths.len() {
            if zero.contains(&x) || zero.contains(&y) {
                continue;
            }
            let pair = Matrix::from_rows(m.cols(), vec![m.row(x).to_vec(), m.row(y).to_vec()]);
            if rank(f, &pair) == 1 {
                // c1 v_x + c2 v_y = 0 with c1 = 1
                let pivot = m.row(x).iter().position(|c| !f.is_zero(c)).expect("nonzero row");
                let c2 = f.neg(&f.div(&m.row(x)[pivot], &m.row(y)[pivot]));
                type_c.push(TypeC {
                    paths: [x, y],
                    coefficients: [format_scalar(&f.to_scalar(&f.one())), format_scalar(&f.to_scalar(&c2))],
                });
            }
        }
    }
    let class = match (relations, zero.len(), type_c.len()) {
        (2, 0, 2) => RelationClass::CC,
        (2, 1, 1) => RelationClass::CZ,
        (2, 2, 0) => RelationClass::ZZ,
        _ => RelationClass::Other,
    };
    SideCensus {
        labels: paths.iter().map(|&p| label(q, p)).collect(),
        paths,
        layer_dim,
        relations,
        zero,
        type_c,
        involved,
        class,
    }
}

/// Length-two paths starting at `i` modulo `J^3`, for any quiver.
pub fn start_side<F: Field>(a: &FiniteDimAlgebra<F>, i: VertexIdx) -> SideCensus {
    side(a, paths_from(a.quiver(), i))
}

/// Length-two paths ending at `i` modulo `J^3`, for any quiver.
pub fn end_side<F: Field>(a: &FiniteDimAlgebra<F>, i: VertexIdx) -> SideCensus {
    side(a, paths_to(a.quiver(), i))
}

/// Type C / type Z classification at every vertex of a 2-regular quiver.
pub fn relation_census<F: Field>(a: &FiniteDimAlgebra<F>) -> Result<RelationTypeReport, QuiverError> {
    let q = a.quiver();
    q.check_two_regular()?;
    let vertices = q
        .vertices()
        .map(|i| {
            let out = q.outgoing(i);
            let inc = q.incoming(i);
            VertexCensus {
                vertex: q.vertex_id(i).to_string(),
                outgoing: out.iter().map(|&x| q.arrow_id(x).to_string()).collect(),
                start: start_side(a, i),
                end: end_side(a, i),
                double_arrows: q.target(out[0]) == q.target(out[1]) || q.source(inc[0]) == q.source(inc[1]),
                loops: out.iter().chain(inc).any(|&x| q.is_loop(x)),
            }
        })
        .collect();
    Ok(RelationTypeReport { vertices })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerOffender {
    pub vertex: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCheck {
    pub pass: bool,
    pub offenders: Vec<LayerOffender>,
}

/// `dim e_i J^2/e_i J^3 = dim J^2 e_i/J^3 e_i = 2` at every vertex.
pub fn jj_dims_check<F: Field>(a: &FiniteDimAlgebra<F>) -> LayerCheck {
    let q = a.quiver();
    let offenders: Vec<LayerOffender> = q
        .vertices()
        .filter_map(|i| {
            let start = a.vertex_layer(i, 2);
            let end = end_side(a, i).layer_dim;
            (start != 2 || end != 2).then(|| LayerOffender {
                vertex: q.vertex_id(i).to_string(),
                start,
                end,
            })
        })
        .collect();
    LayerCheck {
        pass: offenders.is_empty(),
        offenders,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, BuildOptions};
    use crate::field::{FieldDescriptor, PrimeField, Rationals};
    use crate::instances;
    use crate::presentation::Presentation;

    fn gf5(p: &Presentation) -> FiniteDimAlgebra<PrimeField> {
        build_algebra(p, PrimeField::new(5).unwrap(), &BuildOptions::default()).unwrap()
    }

    #[test]
    fn markov_is_zz() {
        let a = gf5(&instances::markov(1, 1));
        let r = relation_census(&a).unwrap();
        for v in &r.vertices {
            assert_eq!(v.start.class, RelationClass::ZZ, "{}", v.vertex);
            assert_eq!(v.end.class, RelationClass::ZZ, "{}", v.vertex);
            assert!(v.double_arrows);
        }
        assert!(r.two_relations_everywhere());
        assert!(jj_dims_check(&a).pass);
    }

    #[test]
    fn tetrahedral_is_cc() {
        let a = gf5(&instances::tetrahedral(1, 1));
        let r = relation_census(&a).unwrap();
        assert!(r
            .vertices
            .iter()
            .all(|v| v.start.class == RelationClass::CC && v.end.class == RelationClass::CC));
        assert!(jj_dims_check(&gf5(&instances::tetrahedral(2, 1))).pass);
    }

    #[test]
    fn semisimple_fails_layer_check() {
        let q = Quiver::from_strs(&["1", "2"], &[]).unwrap();
        let p = Presentation::new(q, vec![], FieldDescriptor::Rationals).unwrap();
        let a = build_algebra(&p, Rationals, &BuildOptions::default()).unwrap();
        let c = jj_dims_check(&a);
        assert!(!c.pass);
        assert_eq!(c.offenders[0].start, 0);
        assert!(relation_census(&a).is_err());
    }
}
