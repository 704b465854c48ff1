use crate::algebra::FiniteDimAlgebra;
use crate::field::Field;
use crate::presentation::Path;
use crate::quiver::{ArrowIdx, ArrowPermutation, Quiver, TriangulationQuiver};

use super::census::RelationTypeReport;

/// Stop enumerating after this many solutions.
const SEARCH_LIMIT: usize = 4096;

/// Continuations `b` of each arrow `a` with `ab` involved in a relation
/// modulo `J^3`, in canonical order.
fn candidates(q: &Quiver, census: &RelationTypeReport) -> Vec<Vec<ArrowIdx>> {
    q.arrows()
        .map(|a| {
            let start = &census.vertices[q.source(a).0].start;
            let mut c: Vec<ArrowIdx> = q
                .outgoing(q.target(a))
                .iter()
                .copied()
                .filter(|&b| start.involves((a, b)))
                .collect();
            c.sort_by_key(|&b| q.arrow_rank(b));
            c
        })
        .collect()
}

fn search(
    cand: &[Vec<ArrowIdx>],
    order: &[ArrowIdx],
    f: &mut Vec<Option<ArrowIdx>>,
    out: &mut Vec<Vec<ArrowIdx>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let Some(&a) = order.iter().find(|&&a| f[a.0].is_none()) else {
        out.push(f.iter().map(|x| x.expect("complete")).collect());
        return;
    };
    let free = |f: &[Option<ArrowIdx>], x: ArrowIdx| f[x.0].is_none();
    for &b in &cand[a.0] {
        if b == a {
            f[a.0] = Some(a);
            search(cand, order, f, out, limit);
            f[a.0] = None;
            continue;
        }
        if !free(f, b) {
            continue;
        }
        for &c in &cand[b.0] {
            if c == a || c == b || !free(f, c) || !cand[c.0].contains(&a) {
                continue;
            }
            f[a.0] = Some(b);
            f[b.0] = Some(c);
            f[c.0] = Some(a);
            search(cand, order, f, out, limit);
            f[a.0] = None;
            f[b.0] = None;
            f[c.0] = None;
        }
    }
}

/// Every `f` (up to `limit`) with `s(f(a)) = t(a)`, `f^3 = id` and each `a f(a)`
/// involved in a relation, valid as a triangulation quiver.
pub fn triangulations_from_census(q: &Quiver, census: &RelationTypeReport, limit: usize) -> Vec<TriangulationQuiver> {
    let cand = candidates(q, census);
    let order = q.arrows_sorted();
    let mut raw = Vec::new();
    search(&cand, &order, &mut vec![None; q.arrow_count()], &mut raw, limit);
    raw.into_iter()
        .filter_map(|map| {
            let f = ArrowPermutation::from_map(map).ok()?;
            TriangulationQuiver::new(q.clone(), f).ok()
        })
        .collect()
}

/// Monomial relations of the presentation that open with an f-pair
/// `a f(a)`, then the number of arrows whose f-triangle `a f(a) f^2(a)` is
/// nonzero in `A`.
fn score<F: Field>(a: &FiniteDimAlgebra<F>, tq: &TriangulationQuiver) -> (usize, usize) {
    let q = a.quiver();
    let f = a.field();
    let openers = a
        .presentation()
        .relations()
        .iter()
        .filter(|r| r.is_monomial())
        .filter(|r| match r.terms()[0].0.arrows() {
            [x, y, ..] => tq.f(*x) == *y,
            _ => false,
        })
        .count();
    let triangles = q
        .arrows()
        .filter(|&x| {
            let p = Path::from_arrows(q, vec![x, tq.f(x), tq.f(tq.f(x))]).expect("f-triangles compose");
            a.path_element(&p).iter().any(|c| !f.is_zero(c))
        })
        .count();
    (openers, triangles)
}

/// A triangulation `f` compatible with the minimal relations of `A`: the first
/// solution in canonical arrow order among those with the best [`score`].
pub fn find_triangulation<F: Field>(
    a: &FiniteDimAlgebra<F>,
    census: &RelationTypeReport,
) -> Option<TriangulationQuiver> {
    let all = triangulations_from_census(a.quiver(), census, SEARCH_LIMIT);
    let mut best: Option<((usize, usize), TriangulationQuiver)> = None;
    for tq in all {
        let s = score(a, &tq);
        if best.as_ref().is_none_or(|(b, _)| s > *b) {
            best = Some((s, tq));
        }
    }
    best.map(|(_, tq)| tq)
}

/// All solutions, for quivers with at most 16 arrows.
pub fn find_all_triangulations<F: Field>(
    a: &FiniteDimAlgebra<F>,
    census: &RelationTypeReport,
) -> Option<Vec<TriangulationQuiver>> {
    (a.quiver().arrow_count() <= 16).then(|| triangulations_from_census(a.quiver(), census, SEARCH_LIMIT))
}

/// Orbit partition of f as sorted lists of arrow ids.
pub fn f_partition(tq: &TriangulationQuiver) -> Vec<Vec<String>> {
    let q = tq.quiver();
    let mut parts: Vec<Vec<String>> = tq
        .f_orbits()
        .into_iter()
        .map(|o| {
            let mut ids: Vec<String> = o.iter().map(|&x| q.arrow_id(x).to_string()).collect();
            ids.sort();
            ids
        })
        .collect();
    parts.sort();
    parts
}
