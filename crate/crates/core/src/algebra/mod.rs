//! Bound quiver algebras as concrete finite-dimensional algebras.

pub mod rewrite;
mod structure;
mod symmetric;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::field::{Field, FieldDescriptor};
use crate::linalg::Subspace;
use crate::presentation::{Path, PathExpr, Presentation};
use crate::quiver::{ArrowIdx, Quiver, VertexIdx};

use rewrite::{Letter, Poly, Rewriter, Word};

pub use structure::{CartanData, SocleDims};
pub use symmetric::{symmetric_form, SymmetricVerdict};

/// Sparse vector: `(basis index, nonzero coefficient)` in increasing index order.
pub type SparseVec<E> = Vec<(usize, E)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Longest overlap or normal word considered before giving up.
    pub cap: usize,
    /// Largest basis accepted before declaring the quotient infinite.
    pub max_dim: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            cap: 64,
            max_dim: 100_000,
        }
    }
}

/// A normal-form path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisPath {
    pub source: VertexIdx,
    pub target: VertexIdx,
    pub word: Word,
}

impl BasisPath {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// K Q / I with a normal-form basis and its radical filtration.
///
/// The basis consists of the words irreducible for a complete rewriting
/// system of the ideal, sorted by source vertex, then length, then letters.
#[derive(Debug, Clone)]
pub struct FiniteDimAlgebra<F: Field> {
    presentation: Presentation,
    field: F,
    letters: Vec<ArrowIdx>,
    letter_of: Vec<Letter>,
    rewriter: Rewriter<F>,
    basis: Vec<BasisPath>,
    index: HashMap<(VertexIdx, Word), usize>,
    /// Basis indices with source `v`, and each element's position there.
    by_source: Vec<Vec<usize>>,
    local: Vec<usize>,
    right: Vec<Vec<SparseVec<F::Elem>>>,
    left: Vec<Vec<SparseVec<F::Elem>>>,
    /// `radical[v][k]` is `e_v J^k` in local coordinates of `e_v A`, up to the first zero.
    radical: Vec<Vec<Subspace<F>>>,
    nilpotency: usize,
}

/// Builds the quotient algebra of `p` over `field`.
pub fn build_algebra<F: Field>(
    p: &Presentation,
    field: F,
    opts: &BuildOptions,
) -> Result<FiniteDimAlgebra<F>, AlgebraError> {
    FiniteDimAlgebra::build(p, field, opts)
}

impl<F: Field> FiniteDimAlgebra<F> {
    pub fn build(p: &Presentation, field: F, opts: &BuildOptions) -> Result<Self, AlgebraError> {
        let q = p.quiver();
        let letters = q.arrows_sorted();
        let mut letter_of = vec![0; q.arrow_count()];
        for (l, a) in letters.iter().enumerate() {
            letter_of[a.0] = l as Letter;
        }
        let mut relations = Vec::with_capacity(p.relations().len());
        for r in p.relations() {
            let mut poly = Vec::with_capacity(r.terms().len());
            for (path, c) in r.terms() {
                let c = field.from_scalar(c)?;
                if !field.is_zero(&c) {
                    poly.push((word_of(&letter_of, path), c));
                }
            }
            if !poly.is_empty() {
                relations.push(poly);
            }
        }
        let rewriter = Rewriter::complete(field.clone(), letters.len(), relations, opts.cap)?;

        let mut basis = Vec::new();
        for v in q.vertices() {
            let mut layer = vec![Vec::<Letter>::new()];
            basis.push(BasisPath {
                source: v,
                target: v,
                word: Word(Vec::new()),
            });
            let mut len = 0;
            while !layer.is_empty() {
                len += 1;
                let mut next = Vec::new();
                for w in &layer {
                    let end = w.last().map_or(v, |&l| q.target(letters[l as usize]));
                    for &a in q.outgoing(end) {
                        let mut w2 = w.clone();
                        w2.push(letter_of[a.0]);
                        if !rewriter.is_reducible(&w2) {
                            next.push(w2);
                        }
                    }
                }
                if !next.is_empty() && len > opts.cap || basis.len() + next.len() > opts.max_dim {
                    return Err(AlgebraError::InfiniteDimensional { cap: opts.cap });
                }
                next.sort();
                for w in &next {
                    basis.push(BasisPath {
                        source: v,
                        target: q.target(letters[*w.last().expect("nonempty") as usize]),
                        word: Word(w.clone()),
                    });
                }
                layer = next;
            }
        }
        let index: HashMap<(VertexIdx, Word), usize> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| ((b.source, b.word.clone()), i))
            .collect();
        let mut by_source = vec![Vec::new(); q.vertex_count()];
        let mut local = vec![0; basis.len()];
        for (i, b) in basis.iter().enumerate() {
            local[i] = by_source[b.source.0].len();
            by_source[b.source.0].push(i);
        }

        let mut alg = FiniteDimAlgebra {
            presentation: p.clone(),
            field,
            letters,
            letter_of,
            rewriter,
            basis,
            index,
            by_source,
            local,
            right: Vec::new(),
            left: Vec::new(),
            radical: Vec::new(),
            nilpotency: 0,
        };
        let q = alg.presentation.quiver().clone();
        alg.right = q
            .arrows()
            .map(|a| {
                (0..alg.basis.len())
                    .map(|i| {
                        let b = &alg.basis[i];
                        if b.target != q.source(a) {
                            return Vec::new();
                        }
                        let mut w = b.word.0.clone();
                        w.push(alg.letter_of[a.0]);
                        alg.sparse_nf(b.source, Word(w))
                    })
                    .collect()
            })
            .collect();
        alg.left = q
            .arrows()
            .map(|a| {
                (0..alg.basis.len())
                    .map(|i| {
                        let b = &alg.basis[i];
                        if b.source != q.target(a) {
                            return Vec::new();
                        }
                        let mut w = vec![alg.letter_of[a.0]];
                        w.extend_from_slice(&b.word.0);
                        alg.sparse_nf(q.source(a), Word(w))
                    })
                    .collect()
            })
            .collect();
        alg.compute_radical()?;
        Ok(alg)
    }

    fn sparse_nf(&self, source: VertexIdx, w: Word) -> SparseVec<F::Elem> {
        let nf = self.rewriter.reduce([(w, self.field.one())]);
        self.poly_to_sparse(source, nf)
    }

    fn poly_to_sparse(&self, source: VertexIdx, nf: Poly<F::Elem>) -> SparseVec<F::Elem> {
        let mut out: SparseVec<F::Elem> = nf.into_iter().map(|(w, c)| (self.index[&(source, w)], c)).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    fn compute_radical(&mut self) -> Result<(), AlgebraError> {
        let f = self.field.clone();
        let q = self.presentation.quiver().clone();
        let mut nilpotency = 0;
        let mut radical = Vec::with_capacity(q.vertex_count());
        for v in q.vertices() {
            let n = self.by_source[v.0].len();
            let units = self.by_source[v.0]
                .iter()
                .enumerate()
                .filter(|(_, &g)| !self.basis[g].is_empty())
                .map(|(k, _)| {
                    let mut e = vec![f.zero(); n];
                    e[k] = f.one();
                    e
                });
            let mut layers = vec![
                Subspace::spanned_by(
                    f.clone(),
                    n,
                    std::iter::once({
                        let mut e = vec![f.zero(); n];
                        e[0] = f.one();
                        e
                    })
                    .chain(units.clone()),
                ),
                Subspace::spanned_by(f.clone(), n, units),
            ];
            while layers.last().expect("nonempty").dim() > 0 {
                let k = layers.len() - 1;
                let prev = &layers[k];
                let mut next = Subspace::new(f.clone(), n);
                for x in prev.basis() {
                    for a in q.arrows() {
                        next.insert(self.right_local(v, x, a));
                    }
                }
                if next.dim() == prev.dim() {
                    return Err(AlgebraError::NotAdmissible {
                        power: k,
                        dim: next.dim(),
                    });
                }
                layers.push(next);
            }
            nilpotency = nilpotency.max(layers.len() - 1);
            radical.push(layers);
        }
        self.radical = radical;
        self.nilpotency = nilpotency;
        Ok(())
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn field_descriptor(&self) -> FieldDescriptor {
        self.field.descriptor()
    }

    pub fn rewriter(&self) -> &Rewriter<F> {
        &self.rewriter
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    /// `a*b*c` or `e_v`.
    pub fn basis_label(&self, i: usize) -> String {
        let b = &self.basis[i];
        let q = self.quiver();
        if b.is_empty() {
            format!("e_{}", q.vertex_id(b.source))
        } else {
            b.word
                .0
                .iter()
                .map(|&l| q.arrow_id(self.letters[l as usize]))
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    pub fn letter(&self, a: ArrowIdx) -> Letter {
        self.letter_of[a.0]
    }

    pub fn arrow_of_letter(&self, l: Letter) -> ArrowIdx {
        self.letters[l as usize]
    }

    /// Basis indices of `e_v A`, with `e_v` first.
    pub fn vertex_basis(&self, v: VertexIdx) -> &[usize] {
        &self.by_source[v.0]
    }

    /// Position of basis element `i` inside its `e_v A`.
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    pub fn basis_index(&self, source: VertexIdx, word: &Word) -> Option<usize> {
        self.index.get(&(source, word.clone())).copied()
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn idempotent(&self, v: VertexIdx) -> usize {
        self.by_source[v.0][0]
    }

    /// The identity `sum e_v`.
    pub fn one(&self) -> Vec<F::Elem> {
        let mut x = self.zero();
        for v in self.quiver().vertices() {
            x[self.idempotent(v)] = self.field.one();
        }
        x
    }

    /// Normal form of a path.
    pub fn path_element(&self, p: &Path) -> Vec<F::Elem> {
        let w = word_of(&self.letter_of, p);
        self.densify(&self.sparse_nf(p.source(), w))
    }

    /// Normal form of a linear combination of paths.
    pub fn expr_element(&self, r: &PathExpr) -> Result<Vec<F::Elem>, AlgebraError> {
        let mut x = self.zero();
        for (p, c) in r.terms() {
            let c = self.field.from_scalar(c)?;
            for (i, y) in self.path_element(p).iter().enumerate() {
                self.field.add_mul_assign(&mut x[i], &c, y);
            }
        }
        Ok(x)
    }

    fn densify(&self, s: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        let mut x = self.zero();
        for (i, c) in s {
            x[*i] = c.clone();
        }
        x
    }

    /// `x * a`
    pub fn mul_arrow(&self, x: &[F::Elem], a: ArrowIdx) -> Vec<F::Elem> {
        let mut out = self.zero();
        for (i, c) in x.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            for (j, d) in &self.right[a.0][i] {
                self.field.add_mul_assign(&mut out[*j], c, d);
            }
        }
        out
    }

    /// `a * x`
    pub fn arrow_mul(&self, a: ArrowIdx, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = self.zero();
        for (i, c) in x.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            for (j, d) in &self.left[a.0][i] {
                self.field.add_mul_assign(&mut out[*j], c, d);
            }
        }
        out
    }

    /// Right action of an arrow on basis element `i`.
    pub fn right_action(&self, i: usize, a: ArrowIdx) -> &SparseVec<F::Elem> {
        &self.right[a.0][i]
    }

    /// `x * b_j`
    pub fn mul_basis(&self, x: &[F::Elem], j: usize) -> Vec<F::Elem> {
        let b = &self.basis[j];
        if b.is_empty() {
            let mut out = self.zero();
            for (i, c) in x.iter().enumerate() {
                if self.basis[i].target == b.source {
                    out[i] = c.clone();
                }
            }
            return out;
        }
        let mut acc = x.to_vec();
        for &l in &b.word.0 {
            acc = self.mul_arrow(&acc, self.letters[l as usize]);
        }
        acc
    }

    pub fn multiply(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = self.zero();
        for (j, c) in y.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            for (k, d) in self.mul_basis(x, j).iter().enumerate() {
                if !self.field.is_zero(d) {
                    self.field.add_mul_assign(&mut out[k], c, d);
                }
            }
        }
        out
    }

    /// `x * a` for `x` in local coordinates of `e_v A`.
    pub fn right_local(&self, v: VertexIdx, x: &[F::Elem], a: ArrowIdx) -> Vec<F::Elem> {
        let n = self.by_source[v.0].len();
        let mut out = vec![self.field.zero(); n];
        for (k, c) in x.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            for (j, d) in &self.right[a.0][self.by_source[v.0][k]] {
                self.field.add_mul_assign(&mut out[self.local[*j]], c, d);
            }
        }
        out
    }

    /// Least `N` with `J^N = 0`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    /// `e_v J^k` in local coordinates; zero beyond the nilpotency index.
    pub fn radical_power(&self, v: VertexIdx, k: usize) -> Subspace<F> {
        let layers = &self.radical[v.0];
        layers
            .get(k)
            .cloned()
            .unwrap_or_else(|| Subspace::new(self.field.clone(), self.by_source[v.0].len()))
    }

    /// `dim J^k / J^{k+1}` for `k = 0 .. N-1`.
    pub fn radical_layers(&self) -> Vec<usize> {
        (0..self.nilpotency)
            .map(|k| {
                self.quiver()
                    .vertices()
                    .map(|v| self.radical_power(v, k).dim() - self.radical_power(v, k + 1).dim())
                    .sum()
            })
            .collect()
    }

    /// `J^k` as a subspace of `A` in global coordinates.
    pub fn radical_power_global(&self, k: usize) -> Subspace<F> {
        let mut s = Subspace::new(self.field.clone(), self.dim());
        for v in self.quiver().vertices() {
            for x in self.radical_power(v, k).basis() {
                s.insert(self.globalize(v, x));
            }
        }
        s
    }

    pub fn globalize(&self, v: VertexIdx, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = self.zero();
        for (k, c) in x.iter().enumerate() {
            out[self.by_source[v.0][k]] = c.clone();
        }
        out
    }

    /// JSON-friendly summary.
    pub fn report(&self) -> AlgebraReport {
        let cartan = self.cartan();
        AlgebraReport {
            field: self.field_descriptor().to_string(),
            dimension: self.dim(),
            nilpotency: self.nilpotency,
            radical_layers: self.radical_layers(),
            vertices: self.quiver().vertex_ids().to_vec(),
            cartan: cartan.matrix.clone(),
            cartan_determinant: cartan.determinant.to_string(),
            basis: (0..self.dim()).map(|i| self.basis_label(i)).collect(),
        }
    }
}

fn word_of(letter_of: &[Letter], p: &Path) -> Word {
    Word(p.arrows().iter().map(|a| letter_of[a.0]).collect())
}

/// Summary written by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub field: String,
    pub dimension: usize,
    pub nilpotency: usize,
    pub radical_layers: Vec<usize>,
    pub vertices: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
    pub cartan_determinant: String,
    pub basis: Vec<String>,
}
