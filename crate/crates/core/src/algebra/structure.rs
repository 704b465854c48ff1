use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::linalg::{left_nullspace, rref, Matrix};
use crate::quiver::VertexIdx;

use super::FiniteDimAlgebra;

/// `C_ij = dim e_i A e_j` and its determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub matrix: Vec<Vec<i64>>,
    #[serde(with = "bigint_string")]
    pub determinant: BigInt,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Socle data of the indecomposable projective `e_v A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleDims {
    pub projective: usize,
    pub soc: usize,
    pub soc2: usize,
}

impl<F: Field> FiniteDimAlgebra<F> {
    pub fn cartan(&self) -> CartanData {
        let n = self.quiver().vertex_count();
        let mut matrix = vec![vec![0i64; n]; n];
        for b in self.basis() {
            matrix[b.source.0][b.target.0] += 1;
        }
        let determinant = crate::linalg::integer_determinant(&matrix);
        CartanData { matrix, determinant }
    }

    /// Matrix of right multiplication by every arrow, side by side, on `e_v A`.
    fn arrow_block(&self, v: VertexIdx) -> Matrix<F::Elem> {
        let f = self.field();
        let n = self.vertex_basis(v).len();
        let arrows: Vec<_> = self.quiver().arrows().collect();
        let mut m = Matrix::zeros(f, n, n * arrows.len());
        for k in 0..n {
            let mut e = vec![f.zero(); n];
            e[k] = f.one();
            for (ai, &a) in arrows.iter().enumerate() {
                for (j, c) in self.right_local(v, &e, a).into_iter().enumerate() {
                    m.set(k, ai * n + j, c);
                }
            }
        }
        m
    }

    /// `soc_k(e_v A) = { x : x J^k = 0 }` as a basis in local coordinates.
    pub fn socle_layer(&self, v: VertexIdx, k: usize) -> Matrix<F::Elem> {
        let f = self.field();
        let n = self.vertex_basis(v).len();
        let arrows = self.arrow_block(v);
        let blocks = arrows.cols() / n.max(1);
        // x lies in soc_k iff x * kernel_test == 0
        let mut test = Matrix::identity(f, n);
        for _ in 0..k {
            let mut cols: Vec<Vec<F::Elem>> = Vec::new();
            for b in 0..blocks {
                let mut block = Matrix::zeros(f, n, n);
                for r in 0..n {
                    for c in 0..n {
                        block.set(r, c, arrows.get(r, b * n + c).clone());
                    }
                }
                let prod = crate::linalg::mat_mul(f, &block, &test);
                cols.extend(prod.transpose().row_vecs());
            }
            let mut t = Matrix::from_rows(n, cols);
            let rank = rref(f, &mut t).len();
            let rows = t.row_vecs().into_iter().take(rank).collect::<Vec<_>>();
            test = if rows.is_empty() {
                Matrix::zeros(f, n, 0)
            } else {
                Matrix::from_rows(n, rows).transpose()
            };
        }
        if test.cols() == 0 {
            return Matrix::identity(f, n);
        }
        left_nullspace(f, &test)
    }

    pub fn socle_dims(&self) -> Vec<SocleDims> {
        self.quiver()
            .vertices()
            .map(|v| SocleDims {
                projective: self.vertex_basis(v).len(),
                soc: self.socle_layer(v, 1).rows(),
                soc2: self.socle_layer(v, 2).rows(),
            })
            .collect()
    }

    /// `dim e_v J^k / e_v J^{k+1}` for every vertex.
    pub fn vertex_layer(&self, v: VertexIdx, k: usize) -> usize {
        self.radical_power(v, k).dim() - self.radical_power(v, k + 1).dim()
    }

    /// Checks `(xy)z = x(yz)` on random basis triples; returns the failures.
    pub fn associativity_failures<R: Rng + ?Sized>(&self, rng: &mut R, trials: usize) -> usize {
        let n = self.dim();
        (0..trials)
            .filter(|_| {
                let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                self.multiply(&self.multiply(&x, &y), &z) != self.multiply(&x, &self.multiply(&y, &z))
            })
            .count()
    }
}
