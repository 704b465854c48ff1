use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::FiniteDimAlgebra;
use crate::field::Field;
use crate::linalg::{left_nullspace, Matrix};
use crate::presentation::{Path, ResolvedWeights, WeightData};
use crate::quiver::{ArrowIdx, TriangulationQuiver};

fn element<F: Field>(a: &FiniteDimAlgebra<F>, arrows: Vec<ArrowIdx>) -> Vec<F::Elem> {
    a.path_element(&Path::from_arrows(a.quiver(), arrows).expect("walks compose"))
}

fn g_walk(tq: &TriangulationQuiver, from: ArrowIdx, len: usize) -> Vec<ArrowIdx> {
    std::iter::successors(Some(from), |&x| Some(tq.g(x)))
        .take(len)
        .collect()
}

fn is_zero<F: Field>(a: &FiniteDimAlgebra<F>, x: &[F::Elem]) -> bool {
    x.iter().all(|c| a.field().is_zero(c))
}

/// Length of the longest nonzero g-walk from `from`.
fn walk_length<F: Field>(a: &FiniteDimAlgebra<F>, tq: &TriangulationQuiver, from: ArrowIdx) -> usize {
    let limit = a.nilpotency() + 1;
    let mut len = 0;
    while len < limit && !is_zero(a, &element(a, g_walk(tq, from, len + 1))) {
        len += 1;
    }
    len
}

/// Solves `x = sum_k t_k v_k` exactly; `None` if no solution or not unique.
fn solve<F: Field>(a: &FiniteDimAlgebra<F>, x: &[F::Elem], vs: &[Vec<F::Elem>]) -> Option<Vec<F::Elem>> {
    let f = a.field();
    let mut rows: Vec<Vec<F::Elem>> = vs.to_vec();
    rows.push(x.to_vec());
    let deps = left_nullspace(f, &Matrix::from_rows(x.len(), rows));
    if deps.rows() != 1 {
        return None;
    }
    let r = deps.row(0);
    let last = &r[vs.len()];
    if f.is_zero(last) {
        return None;
    }
    Some(r[..vs.len()].iter().map(|t| f.neg(&f.div(t, last))).collect())
}

/// Reads `(m, c, b)` off the normal forms of `A` for the triangulation `tq`.
///
/// `m` of each g-orbit comes from the longest nonzero g-walk; every `a f(a)`
/// must equal `c A_{bar a}` (plus `b B_{bar a}` at border loops) exactly, with
/// `c` constant on g-orbits. No change of basis is attempted.
pub fn fit_weights<F: Field>(a: &FiniteDimAlgebra<F>, tq: &TriangulationQuiver) -> Option<WeightData> {
    let f = a.field();
    let q = tq.quiver();
    if q != a.quiver() {
        return None;
    }
    let mut m = Vec::with_capacity(tq.orbits().len());
    for o in tq.orbits() {
        let n = o.len();
        let lens: Vec<usize> = o.arrows.iter().map(|&x| walk_length(a, tq, x)).collect();
        let len = lens[0];
        if lens.iter().any(|&l| l != len) || len == 0 || !len.is_multiple_of(n) || len < 3 {
            return None;
        }
        m.push(len / n);
    }
    let expected: usize = tq.orbits().iter().zip(&m).map(|(o, &mk)| mk * o.len() * o.len()).sum();
    if expected != a.dim() {
        return None;
    }
    let mut c: Vec<Option<F::Elem>> = vec![None; m.len()];
    let mut b: BTreeMap<String, F::Elem> = BTreeMap::new();
    for x in q.arrows_sorted() {
        let bar = tq.bar(x);
        let k = tq.orbit_index(bar);
        let len = m[k] * tq.n(bar);
        let lhs = element(a, vec![x, tq.f(x)]);
        let a_term = element(a, g_walk(tq, bar, len - 1));
        let mut terms = vec![a_term];
        let border = tq.is_border_loop(x);
        if border {
            terms.push(element(a, g_walk(tq, bar, len)));
        }
        let t = solve(a, &lhs, &terms)?;
        if f.is_zero(&t[0]) || c[k].as_ref().is_some_and(|prev| *prev != t[0]) {
            return None;
        }
        c[k] = Some(t[0].clone());
        if border && !f.is_zero(&t[1]) {
            b.insert(q.vertex_id(q.source(x)).to_string(), t[1].clone());
        }
    }
    for x in q.arrows() {
        let fx = tq.f(x);
        if !is_zero(a, &element(a, vec![x, fx, tq.g(fx)])) {
            return None;
        }
    }
    let mut w = WeightData::default();
    for (k, o) in tq.orbits().iter().enumerate() {
        let id = q.arrow_id(o.representative()).to_string();
        w.m.insert(id.clone(), m[k] as u32);
        w.c.insert(id, f.to_scalar(c[k].as_ref()?));
    }
    w.b = b.into_iter().map(|(v, e)| (v, f.to_scalar(&e))).collect();
    Some(w)
}

/// Weights resolved on `tq`, scalars read in `field`, zero border values dropped.
pub fn normalized<F: Field>(w: &WeightData, tq: &TriangulationQuiver, field: &F) -> Option<ResolvedWeights> {
    let mut r = w.resolve(tq).ok()?;
    for c in r.c.iter_mut() {
        *c = field.to_scalar(&field.from_scalar(c).ok()?);
    }
    let mut b = BTreeMap::new();
    for (v, s) in r.b {
        let s = field.to_scalar(&field.from_scalar(&s).ok()?);
        if !s.is_zero() {
            b.insert(v, s);
        }
    }
    r.b = b;
    Some(r)
}
