use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::linalg::{nullspace, rank, Matrix, Subspace};
use crate::quiver::VertexIdx;

use super::{FiniteDimAlgebra, SparseVec};

/// Outcome of the search for a non-degenerate symmetric associative form.
#[derive(Debug, Clone, PartialEq)]
pub enum SymmetricVerdict<E> {
    /// `form[i] = phi(b_i)`; `attempts` counts candidates tried.
    Witness { form: Vec<E>, attempts: usize },
    /// No candidate was non-degenerate; `codimension` is that of the commutator space.
    NotFound { trials: usize, codimension: usize },
    /// A non-zero element of `soc(A_A) e_j` is a sum of commutators, so every
    /// symmetric form vanishes on it.
    NotSymmetric { vertex: VertexIdx },
}

impl<E> SymmetricVerdict<E> {
    pub fn is_witness(&self) -> bool {
        matches!(self, SymmetricVerdict::Witness { .. })
    }
}

/// Looks for `phi` vanishing on `[A, A]` with `(a, b) -> phi(ab)` non-degenerate.
///
/// Each basis form of the annihilator of `[A, A]` is tried, then their sum,
/// then `trials` random combinations drawn from `seed`.
pub fn symmetric_form<F: Field>(a: &FiniteDimAlgebra<F>, trials: usize, seed: u64) -> SymmetricVerdict<F::Elem> {
    let f = a.field();
    let n = a.dim();
    let products: Vec<Vec<SparseVec<F::Elem>>> = (0..n)
        .map(|i| {
            let x = a.unit(i);
            (0..n)
                .map(|j| {
                    if a.basis()[i].target != a.basis()[j].source {
                        return Vec::new();
                    }
                    a.mul_basis(&x, j)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !f.is_zero(c))
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut commutators = Subspace::new(f.clone(), n);
    for (i, row) in products.iter().enumerate() {
        for (j, ij) in row.iter().enumerate().skip(i + 1) {
            let ji = &products[j][i];
            if ij.is_empty() && ji.is_empty() {
                continue;
            }
            let mut c = a.zero();
            for (k, x) in ij {
                c[*k] = f.add(&c[*k], x);
            }
            for (k, x) in ji {
                c[*k] = f.sub(&c[*k], x);
            }
            commutators.insert(c);
        }
    }

    for v in a.quiver().vertices() {
        let mut soc_v = Subspace::new(f.clone(), n);
        for u in a.quiver().vertices() {
            for x in a.socle_layer(u, 1).row_vecs() {
                let mut g = a.globalize(u, &x);
                for (k, c) in g.iter_mut().enumerate() {
                    if a.basis()[k].target != v {
                        *c = f.zero();
                    }
                }
                soc_v.insert(g);
            }
        }
        let mut sum = commutators.clone();
        let mut meets = false;
        for x in soc_v.basis() {
            meets |= !sum.insert(x.clone());
        }
        if meets {
            return SymmetricVerdict::NotSymmetric { vertex: v };
        }
    }

    let forms = if commutators.dim() == 0 {
        Matrix::identity(f, n)
    } else {
        nullspace(f, &commutators.to_matrix())
    };
    let gram = |phi: &[F::Elem]| {
        let mut g = Matrix::zeros(f, n, n);
        for (i, row) in products.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let mut s = f.zero();
                for (k, c) in p {
                    f.add_mul_assign(&mut s, c, &phi[*k]);
                }
                g.set(i, j, s);
            }
        }
        g
    };
    let mut candidates: Vec<Vec<F::Elem>> = forms.row_vecs();
    let mut total = a.zero();
    for phi in forms.row_vecs() {
        for (t, x) in total.iter_mut().zip(&phi) {
            *t = f.add(t, x);
        }
    }
    candidates.push(total);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut phi = a.zero();
        for row in forms.row_vecs() {
            let c = f.random(&mut rng);
            for (t, x) in phi.iter_mut().zip(&row) {
                f.add_mul_assign(t, &c, x);
            }
        }
        candidates.push(phi);
    }
    for (attempt, phi) in candidates.into_iter().enumerate() {
        if rank(f, &gram(&phi)) == n {
            return SymmetricVerdict::Witness {
                form: phi,
                attempts: attempt + 1,
            };
        }
    }
    SymmetricVerdict::NotFound {
        trials,
        codimension: forms.rows(),
    }
}
