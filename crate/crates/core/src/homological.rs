//! Right modules over a [`FiniteDimAlgebra`], projective covers, syzygies and
//! periods of simple modules.
//!
//! A module is a vector space per vertex and one matrix per arrow; vectors are
//! rows, so `x * M_a` is the action of `a` on `x` in the source component.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteDimAlgebra;
use crate::error::ModuleError;
use crate::field::Field;
use crate::linalg::{is_zero_matrix, left_nullspace, mat_add_scaled, mat_mul, vec_mat, Matrix, Subspace};
use crate::presentation::format_relation;
use crate::quiver::{ArrowIdx, VertexIdx};

#[derive(Debug, Clone, PartialEq)]
pub struct Module<F: Field> {
    dims: Vec<usize>,
    maps: Vec<Matrix<F::Elem>>,
}

impl<F: Field> Module<F> {
    /// Checks shapes and that every relation acts as zero.
    pub fn new(a: &FiniteDimAlgebra<F>, dims: Vec<usize>, maps: Vec<Matrix<F::Elem>>) -> Result<Self, ModuleError> {
        let q = a.quiver();
        if dims.len() != q.vertex_count() {
            return Err(ModuleError::UnknownVertex(dims.len()));
        }
        for arrow in q.arrows() {
            let m = &maps[arrow.0];
            let (want_rows, want_cols) = (dims[q.source(arrow).0], dims[q.target(arrow).0]);
            if (m.rows(), m.cols()) != (want_rows, want_cols) {
                return Err(ModuleError::Shape {
                    arrow: q.arrow_id(arrow).to_string(),
                    rows: m.rows(),
                    cols: m.cols(),
                    want_rows,
                    want_cols,
                });
            }
        }
        let module = Module { dims, maps };
        let f = a.field();
        for r in a.presentation().relations() {
            let (Some(s), Some(t)) = (r.source(), r.target()) else {
                continue;
            };
            let mut acc = Matrix::zeros(f, module.dims[s.0], module.dims[t.0]);
            for (p, c) in r.terms() {
                let c = f
                    .from_scalar(c)
                    .map_err(|_| ModuleError::RelationNonzero(format_relation(q, r)))?;
                let mut m = Matrix::identity(f, module.dims[s.0]);
                for &arrow in p.arrows() {
                    m = mat_mul(f, &m, &module.maps[arrow.0]);
                }
                mat_add_scaled(f, &mut acc, &c, &m);
            }
            if !is_zero_matrix(f, &acc) {
                return Err(ModuleError::RelationNonzero(format_relation(q, r)));
            }
        }
        Ok(module)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn map(&self, a: ArrowIdx) -> &Matrix<F::Elem> {
        &self.maps[a.0]
    }
}

fn check_vertex<F: Field>(a: &FiniteDimAlgebra<F>, i: VertexIdx) -> Result<(), ModuleError> {
    if i.0 >= a.quiver().vertex_count() {
        Err(ModuleError::UnknownVertex(i.0))
    } else {
        Ok(())
    }
}

/// `S_i`: one-dimensional at `i`, every arrow acts as zero.
pub fn simple_module<F: Field>(a: &FiniteDimAlgebra<F>, i: VertexIdx) -> Result<Module<F>, ModuleError> {
    check_vertex(a, i)?;
    let q = a.quiver();
    let dims: Vec<usize> = q.vertices().map(|v| usize::from(v == i)).collect();
    let maps = q
        .arrows()
        .map(|arrow| Matrix::zeros(a.field(), dims[q.source(arrow).0], dims[q.target(arrow).0]))
        .collect();
    Ok(Module { dims, maps })
}

/// `P_i = e_i A` on its normal-form basis, grouped by target vertex.
pub fn projective_module<F: Field>(a: &FiniteDimAlgebra<F>, i: VertexIdx) -> Result<Module<F>, ModuleError> {
    check_vertex(a, i)?;
    let q = a.quiver();
    let f = a.field();
    let (groups, position) = projective_layout(a, i);
    let dims: Vec<usize> = groups.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .map(|arrow| {
            let (s, t) = (q.source(arrow), q.target(arrow));
            let mut m = Matrix::zeros(f, dims[s.0], dims[t.0]);
            for (r, &b) in groups[s.0].iter().enumerate() {
                for (j, c) in a.right_action(b, arrow) {
                    m.set(r, position[*j].expect("same source"), c.clone());
                }
            }
            m
        })
        .collect();
    Ok(Module { dims, maps })
}

/// Basis indices of `e_i A e_v` per `v`, and each index's position in its group.
fn projective_layout<F: Field>(a: &FiniteDimAlgebra<F>, i: VertexIdx) -> (Vec<Vec<usize>>, Vec<Option<usize>>) {
    let mut groups = vec![Vec::new(); a.quiver().vertex_count()];
    let mut position = vec![None; a.dim()];
    for &b in a.vertex_basis(i) {
        let t = a.basis()[b].target;
        position[b] = Some(groups[t.0].len());
        groups[t.0].push(b);
    }
    (groups, position)
}

/// Radical `M J` per vertex.
fn radical<F: Field>(a: &FiniteDimAlgebra<F>, m: &Module<F>) -> Vec<Subspace<F>> {
    let q = a.quiver();
    let mut rad: Vec<Subspace<F>> = m.dims.iter().map(|&d| Subspace::new(a.field().clone(), d)).collect();
    for arrow in q.arrows() {
        let t = q.target(arrow).0;
        for row in m.maps[arrow.0].row_vecs() {
            rad[t].insert(row);
        }
    }
    rad
}

/// Dimension vector of `M / M J`.
pub fn top<F: Field>(a: &FiniteDimAlgebra<F>, m: &Module<F>) -> Vec<usize> {
    radical(a, m).iter().zip(&m.dims).map(|(r, d)| d - r.dim()).collect()
}

/// A projective cover `P -> M`: summands `(vertex, image of e_vertex)`.
#[derive(Debug, Clone)]
pub struct ProjectiveCover<F: Field> {
    pub summands: Vec<(VertexIdx, Vec<F::Elem>)>,
    pub multiplicities: Vec<usize>,
}

/// Top lifts: first complement of the radical by unit vectors, optionally
/// perturbed by random radical elements.
pub fn projective_cover<F: Field>(
    a: &FiniteDimAlgebra<F>,
    m: &Module<F>,
    rng: Option<&mut dyn RngCore>,
) -> ProjectiveCover<F> {
    let f = a.field();
    let rad = radical(a, m);
    let mut rng = rng;
    let mut summands = Vec::new();
    let mut multiplicities = vec![0; m.dims.len()];
    for v in a.quiver().vertices() {
        for k in rad[v.0].complement_units() {
            let mut x = vec![f.zero(); m.dims[v.0]];
            x[k] = f.one();
            if let Some(r) = rng.as_deref_mut() {
                for b in rad[v.0].basis() {
                    let c = f.random(r);
                    for (xi, bi) in x.iter_mut().zip(b) {
                        f.add_mul_assign(xi, &c, bi);
                    }
                }
            }
            summands.push((v, x));
            multiplicities[v.0] += 1;
        }
    }
    ProjectiveCover {
        summands,
        multiplicities,
    }
}

/// `x * w` for a vector `x` in `M_v` and a basis path `w` starting at `v`.
fn act_word<F: Field>(a: &FiniteDimAlgebra<F>, m: &Module<F>, x: &[F::Elem], b: usize) -> Vec<F::Elem> {
    let mut acc = x.to_vec();
    for &l in &a.basis()[b].word.0 {
        acc = vec_mat(a.field(), &acc, &m.maps[a.arrow_of_letter(l).0]);
    }
    acc
}

/// Kernel of the cover map, with the cover's multiplicities.
pub fn syzygy_with<F: Field>(a: &FiniteDimAlgebra<F>, m: &Module<F>, cover: &ProjectiveCover<F>) -> Module<F> {
    let f = a.field();
    let q = a.quiver();
    let n = q.vertex_count();
    // P_x basis: for each summand, the paths of e_u A ending at x
    let layouts: Vec<_> = cover.summands.iter().map(|(u, _)| projective_layout(a, *u)).collect();
    let mut p_dims = vec![0usize; n];
    let mut offsets = vec![vec![0usize; n]; cover.summands.len()];
    for (s, (groups, _)) in layouts.iter().enumerate() {
        offsets[s].copy_from_slice(&p_dims);
        for (d, g) in p_dims.iter_mut().zip(groups) {
            *d += g.len();
        }
    }
    let mut kernels = Vec::with_capacity(n);
    for x in 0..n {
        let mut pi = Matrix::zeros(f, p_dims[x], m.dims[x]);
        for (s, (groups, _)) in layouts.iter().enumerate() {
            for (r, &b) in groups[x].iter().enumerate() {
                let img = act_word(a, m, &cover.summands[s].1, b);
                for (c, val) in img.into_iter().enumerate() {
                    pi.set(offsets[s][x] + r, c, val);
                }
            }
        }
        let k = if m.dims[x] == 0 {
            Matrix::identity(f, p_dims[x])
        } else {
            left_nullspace(f, &pi)
        };
        kernels.push(Subspace::spanned_by(f.clone(), p_dims[x], k.row_vecs()));
    }
    let dims: Vec<usize> = kernels.iter().map(Subspace::dim).collect();
    let maps = q
        .arrows()
        .map(|arrow| {
            let (s, t) = (q.source(arrow).0, q.target(arrow).0);
            let mut out = Matrix::zeros(f, dims[s], dims[t]);
            for (r, y) in kernels[s].basis().iter().enumerate() {
                let mut img = vec![f.zero(); p_dims[t]];
                for (sm, (groups, position)) in layouts.iter().enumerate() {
                    for (k, &b) in groups[s].iter().enumerate() {
                        let c = &y[offsets[sm][s] + k];
                        if f.is_zero(c) {
                            continue;
                        }
                        for (j, d) in a.right_action(b, arrow) {
                            let pos = offsets[sm][t] + position[*j].expect("same source");
                            f.add_mul_assign(&mut img[pos], c, d);
                        }
                    }
                }
                let coords = kernels[t].coordinates(&img).expect("kernel is a submodule");
                for (c, val) in coords.into_iter().enumerate() {
                    out.set(r, c, val);
                }
            }
            out
        })
        .collect();
    Module { dims, maps }
}

/// `Omega(M)` for the first-lift minimal cover.
pub fn syzygy<F: Field>(a: &FiniteDimAlgebra<F>, m: &Module<F>) -> Module<F> {
    let cover = projective_cover(a, m, None);
    syzygy_with(a, m, &cover)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionStep {
    /// Dimension vector of `Omega^k(S_i)`.
    pub dims: Vec<usize>,
    /// Multiplicity of each `P_v` in its projective cover.
    pub cover: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionTrace {
    pub vertex: usize,
    pub steps: Vec<ResolutionStep>,
    /// Least `k >= 1` with `Omega^k(S_i)` simple at `i`.
    pub period: Option<usize>,
}

fn is_indicator(dims: &[usize], i: VertexIdx) -> bool {
    dims.iter().enumerate().all(|(v, &d)| d == usize::from(v == i.0))
}

/// `Omega^k(S_i)` for `k = 0 ..= bound`, stopping early at the period.
pub fn resolution<F: Field>(
    a: &FiniteDimAlgebra<F>,
    i: VertexIdx,
    bound: usize,
) -> Result<ResolutionTrace, ModuleError> {
    resolution_with(a, i, bound, true)
}

/// Like [`resolution`], optionally continuing past the period up to `bound`.
pub fn resolution_with<F: Field>(
    a: &FiniteDimAlgebra<F>,
    i: VertexIdx,
    bound: usize,
    stop_at_period: bool,
) -> Result<ResolutionTrace, ModuleError> {
    let mut m = simple_module(a, i)?;
    let mut steps = Vec::new();
    let mut period = None;
    for k in 0..=bound {
        let cover = projective_cover(a, &m, None);
        steps.push(ResolutionStep {
            dims: m.dims.clone(),
            cover: cover.multiplicities.clone(),
        });
        if k > 0 && period.is_none() && is_indicator(&m.dims, i) {
            period = Some(k);
            if stop_at_period {
                break;
            }
        }
        if k == bound || m.is_zero() {
            break;
        }
        m = syzygy_with(a, &m, &cover);
    }
    Ok(ResolutionTrace {
        vertex: i.0,
        steps,
        period,
    })
}

/// Least `k <= bound` with `Omega^k(S_i) = S_i`, decided by dimension vectors.
pub fn period_of_simple<F: Field>(
    a: &FiniteDimAlgebra<F>,
    i: VertexIdx,
    bound: usize,
) -> Result<Option<usize>, ModuleError> {
    Ok(resolution(a, i, bound)?.period)
}

/// Dimension vectors of `Omega^2(S_i)` under `repeats` random cover lifts
/// agree with the first-lift one.
pub fn omega2_lift_independent<F: Field>(
    a: &FiniteDimAlgebra<F>,
    i: VertexIdx,
    repeats: usize,
    seed: u64,
) -> Result<bool, ModuleError> {
    let s = simple_module(a, i)?;
    let reference = syzygy(a, &syzygy(a, &s)).dims;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..repeats {
        let c1 = projective_cover(a, &s, Some(&mut rng));
        let o1 = syzygy_with(a, &s, &c1);
        let c2 = projective_cover(a, &o1, Some(&mut rng));
        if syzygy_with(a, &o1, &c2).dims != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, BuildOptions};
    use crate::field::{FieldDescriptor, PrimeField, Rationals};
    use crate::instances;
    use crate::presentation::Presentation;
    use crate::quiver::Quiver;

    fn markov() -> FiniteDimAlgebra<PrimeField> {
        build_algebra(
            &instances::markov(1, 1),
            PrimeField::new(5).unwrap(),
            &BuildOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn projective_is_a_module() {
        let a = markov();
        let p = projective_module(&a, VertexIdx(0)).unwrap();
        assert_eq!(p.dim(), 12);
        let checked = Module::new(&a, p.dims().to_vec(), p.maps.clone()).unwrap();
        assert_eq!(top(&a, &checked), vec![1, 0, 0]);
        assert!(syzygy(&a, &p).is_zero());
    }

    #[test]
    fn markov_resolution_shape() {
        let a = markov();
        let t = resolution(&a, VertexIdx(0), 4).unwrap();
        let covers: Vec<_> = t.steps.iter().map(|s| s.cover.clone()).collect();
        assert_eq!(
            covers[..4],
            [vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 2], vec![1, 0, 0]]
        );
        assert_eq!(t.steps[1].dims.iter().sum::<usize>(), 11);
        assert_eq!(t.steps[2].dims.iter().sum::<usize>(), 13);
        assert_eq!(t.period, Some(4));
    }

    #[test]
    fn bad_module_is_rejected() {
        let a = markov();
        let q = a.quiver();
        let maps = q.arrows().map(|_| Matrix::identity(a.field(), 1)).collect();
        assert!(matches!(
            Module::new(&a, vec![1, 1, 1], maps),
            Err(ModuleError::RelationNonzero(_))
        ));
        assert!(simple_module(&a, VertexIdx(9)).is_err());
    }

    #[test]
    fn semisimple_control() {
        let q = Quiver::from_strs(&["1", "2"], &[]).unwrap();
        let p = Presentation::new(q, vec![], FieldDescriptor::Rationals).unwrap();
        let a = build_algebra(&p, Rationals, &BuildOptions::default()).unwrap();
        let s = simple_module(&a, VertexIdx(0)).unwrap();
        assert!(syzygy(&a, &s).is_zero());
        assert_eq!(period_of_simple(&a, VertexIdx(0), 8).unwrap(), None);
    }

    #[test]
    fn lifts_do_not_matter() {
        let a = markov();
        assert!(omega2_lift_independent(&a, VertexIdx(1), 3, 11).unwrap());
    }
}
