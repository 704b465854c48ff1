//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are rows; a matrix acts on the right (`v * M`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Self { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [E] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

pub fn is_zero_vec<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

pub fn is_zero_matrix<F: Field>(field: &F, m: &Matrix<F::Elem>) -> bool {
    is_zero_vec(field, &m.data)
}

/// `v * m`
pub fn vec_mat<F: Field>(field: &F, v: &[F::Elem], m: &Matrix<F::Elem>) -> Vec<F::Elem> {
    debug_assert_eq!(v.len(), m.rows);
    let mut out = vec![field.zero(); m.cols];
    for (r, x) in v.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (c, o) in out.iter_mut().enumerate() {
            let y = m.get(r, c);
            if !field.is_zero(y) {
                field.add_mul_assign(o, x, y);
            }
        }
    }
    out
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let rows = (0..a.rows).map(|r| vec_mat(field, a.row(r), b)).collect();
    Matrix::from_rows(b.cols, rows)
}

pub fn mat_add_scaled<F: Field>(field: &F, acc: &mut Matrix<F::Elem>, c: &F::Elem, m: &Matrix<F::Elem>) {
    assert_eq!((acc.rows, acc.cols), (m.rows, m.cols));
    for (x, y) in acc.data.iter_mut().zip(&m.data) {
        if !field.is_zero(y) {
            field.add_mul_assign(x, c, y);
        }
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(m.get(r, c));
        for x in m.row_mut(r) {
            *x = field.mul(x, &inv);
        }
        let pivot_row = m.row(r).to_vec();
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            let neg = field.neg(&factor);
            for (x, y) in m.row_mut(i).iter_mut().zip(&pivot_row) {
                if !field.is_zero(y) {
                    field.add_mul_assign(x, &neg, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut w = m.clone();
    rref(field, &mut w).len()
}

/// Basis (as rows, in RREF) of `{ x : m * x^T = 0 }`.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut w = m.clone();
    let pivots = rref(field, &mut w);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![field.zero(); m.cols];
        v[fc] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(w.get(r, fc));
        }
        basis.push(v);
    }
    let mut out = Matrix::from_rows(m.cols, basis);
    rref(field, &mut out);
    out
}

/// Basis (as rows, in RREF) of `{ y : y * m = 0 }`.
pub fn left_nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    nullspace(field, &m.transpose())
}

/// A subspace of `F^n` kept as a fully reduced echelon basis.
///
/// Coordinates of a vector in the span are its entries at the pivot columns.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<I: IntoIterator<Item = Vec<F::Elem>>>(field: F, ambient: usize, vectors: I) -> Self {
        let mut s = Self::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot columns.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = f.neg(&v[p]);
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    f.add_mul_assign(x, &factor, y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        is_zero_vec(&self.field, &self.reduce(v.to_vec()))
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let factor = f.neg(&row[p]);
            for (x, y) in row.iter_mut().zip(&v) {
                if !f.is_zero(y) {
                    f.add_mul_assign(x, &factor, y);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Coordinates with respect to [`Subspace::basis`]; `None` if outside the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Greedy complement by standard unit vectors, in increasing index order.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut s = self.clone();
        let mut chosen = Vec::new();
        for k in 0..self.ambient {
            let mut e = vec![self.field.zero(); self.ambient];
            e[k] = self.field.one();
            if s.insert(e) {
                chosen.push(k);
            }
        }
        chosen
    }

    pub fn to_matrix(&self) -> Matrix<F::Elem> {
        Matrix::from_rows(self.ambient, self.rows.clone())
    }
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn integer_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(n: i64) -> num_rational::BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn rref_and_rank() {
        let f = Rationals;
        let mut m = Matrix::from_rows(
            3,
            vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]],
        );
        let piv = rref(&f, &mut m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m.row(0), &[q(1), q(0), q(1)]);
    }

    #[test]
    fn nullspaces() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(3, vec![vec![1, 2, 3], vec![2, 4, 2]]);
        let ns = nullspace(&f, &m);
        assert_eq!(ns.rows(), 1);
        let v = ns.row(0).to_vec();
        let prod = vec_mat(&f, &v, &m.transpose());
        assert!(is_zero_vec(&f, &prod));
        let lns = left_nullspace(&f, &Matrix::from_rows(2, vec![vec![1, 2], vec![2, 4], vec![0, 1]]));
        assert_eq!(lns.rows(), 1);
    }

    #[test]
    fn subspace_coordinates() {
        let f = Rationals;
        let mut s = Subspace::new(f, 3);
        assert!(s.insert(vec![q(1), q(1), q(0)]));
        assert!(s.insert(vec![q(0), q(1), q(1)]));
        assert!(!s.insert(vec![q(1), q(2), q(1)]));
        let v = vec![q(2), q(5), q(3)];
        let c = s.coordinates(&v).unwrap();
        let mut back = vec![q(0); 3];
        for (ci, row) in c.iter().zip(s.basis()) {
            for (b, r) in back.iter_mut().zip(row) {
                *b += ci * r;
            }
        }
        assert_eq!(back, v);
        assert!(s.coordinates(&[q(1), q(0), q(0)]).is_none());
        assert_eq!(s.complement_units().len(), 1);
    }

    #[test]
    fn determinants() {
        assert_eq!(integer_determinant(&[vec![2, 1], vec![1, 2]]), BigInt::from(3));
        assert_eq!(integer_determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(integer_determinant(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
        assert_eq!(
            integer_determinant(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]),
            BigInt::from(6)
        );
    }
}
