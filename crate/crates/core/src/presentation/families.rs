use num_traits::{One, Zero};

use crate::error::PresentationError;
use crate::field::{scalar_from_i64, FieldDescriptor, Scalar};
use crate::instances;
use crate::quiver::{ArrowIdx, TriangulationQuiver};

use super::{a_path, b_path, Family, Path, PathExpr, Presentation, WeightData};

fn arrow_path(tq: &TriangulationQuiver, arrows: Vec<ArrowIdx>) -> Path {
    Path::from_arrows(tq.quiver(), arrows).expect("composable by construction")
}

/// Relations `a f(a) - c A_{bar a}` (with `- b B_{bar a}` at border loops when
/// `deform`) followed by `b f(b) g(f(b))`, arrows in identifier order.
fn surface_relations(
    tq: &TriangulationQuiver,
    w: &WeightData,
    deform: bool,
) -> Result<Presentation, PresentationError> {
    let r = w.resolve(tq)?;
    let q = tq.quiver();
    let mut relations = Vec::with_capacity(2 * q.arrow_count());
    for a in q.arrows_sorted() {
        let bar = tq.bar(a);
        let mut terms = vec![
            (arrow_path(tq, vec![a, tq.f(a)]), Scalar::one()),
            (a_path(tq, &r, bar), -r.c_of(tq, bar).clone()),
        ];
        if deform && tq.is_border_loop(a) {
            let b = r.b_at(q.source(a));
            if !b.is_zero() {
                terms.push((b_path(tq, &r, bar), -b));
            }
        }
        relations.push(PathExpr::new(q, terms)?);
    }
    for a in q.arrows_sorted() {
        let fa = tq.f(a);
        relations.push(PathExpr::new(
            q,
            vec![(arrow_path(tq, vec![a, fa, tq.g(fa)]), Scalar::one())],
        )?);
    }
    Ok(Presentation::new(q.clone(), relations, FieldDescriptor::Rationals)?
        .with_triangulation(tq)
        .with_length_hint(r.max_cycle(tq)))
}

/// The weighted triangulation algebra: `2|Q_1|` relations.
pub fn weighted_relations(tq: &TriangulationQuiver, w: &WeightData) -> Result<Presentation, PresentationError> {
    if !w.border_is_zero() {
        let v = w.b.iter().find(|(_, b)| !b.is_zero()).map(|(k, _)| k.clone());
        return Err(PresentationError::NotBorder(format!(
            "{} (border function must vanish for the undeformed family)",
            v.unwrap_or_default()
        )));
    }
    Ok(surface_relations(tq, w, false)?.with_family(Family::Weighted))
}

/// The socle-deformed algebra: border loops get `- b_{s(a)} B_{bar a}`.
pub fn deformed_relations(tq: &TriangulationQuiver, w: &WeightData) -> Result<Presentation, PresentationError> {
    if tq.border().is_empty() {
        return Err(PresentationError::EmptyBorder);
    }
    Ok(surface_relations(tq, w, true)?.with_family(Family::Deformed))
}

/// Λ(m, λ) on the fixed tetrahedral quiver: 12 commutativity-type relations
/// and 12 zero relations.
pub fn tetrahedral_presentation(m: u32, lambda: Scalar) -> Result<Presentation, PresentationError> {
    if m == 0 {
        return Err(PresentationError::WeightConstraint {
            arrow: "alpha".into(),
            m,
            n: 3,
        });
    }
    let tq = instances::tetrahedral_quiver();
    let q = tq.quiver();
    let p = |ids: &[&str]| -> Path {
        arrow_path(
            &tq,
            ids.iter().map(|i| q.arrow_index(i).expect("fixed label")).collect(),
        )
    };
    let power = |cycle: &[&str], k: u32, tail: &[&str]| -> Path {
        let mut ids: Vec<&str> = Vec::new();
        for _ in 0..k {
            ids.extend_from_slice(cycle);
        }
        ids.extend_from_slice(tail);
        p(&ids)
    };
    let one = Scalar::one();
    let deformed = |lhs: [&str; 2], rhs: [&str; 2], cycle: [&str; 3]| -> Result<PathExpr, PresentationError> {
        PathExpr::new(
            q,
            vec![
                (p(&lhs), one.clone()),
                (p(&rhs), -one.clone()),
                (power(&cycle, m - 1, &rhs), -lambda.clone()),
            ],
        )
    };
    let plain = |lhs: [&str; 2], rhs: [&str; 2]| -> Result<PathExpr, PresentationError> {
        PathExpr::new(q, vec![(p(&lhs), one.clone()), (p(&rhs), scalar_from_i64(-1))])
    };
    let mut relations = vec![
        deformed(["gamma", "delta"], ["beta", "epsilon"], ["beta", "rho", "omega"])?,
        plain(["delta", "eta"], ["nu", "omega"])?,
        plain(["eta", "gamma"], ["xi", "alpha"])?,
        plain(["nu", "mu"], ["delta", "xi"])?,
        deformed(["rho", "omega"], ["epsilon", "eta"], ["epsilon", "xi", "sigma"])?,
        plain(["omega", "beta"], ["mu", "sigma"])?,
        plain(["beta", "rho"], ["gamma", "nu"])?,
        plain(["mu", "alpha"], ["omega", "gamma"])?,
        deformed(["xi", "sigma"], ["eta", "beta"], ["eta", "gamma", "delta"])?,
        plain(["sigma", "epsilon"], ["alpha", "delta"])?,
        plain(["epsilon", "xi"], ["rho", "mu"])?,
        plain(["alpha", "nu"], ["sigma", "rho"])?,
    ];
    for t in q.arrows_sorted() {
        let ft = tq.f(t);
        let ff = tq.f(ft);
        let mut arrows = Vec::with_capacity(3 * m as usize);
        for _ in 1..m {
            arrows.extend([t, ft, ff]);
        }
        arrows.extend([t, ft, tq.g(ft)]);
        relations.push(PathExpr::new(q, vec![(arrow_path(&tq, arrows), one.clone())])?);
    }
    Ok(Presentation::new(q.clone(), relations, FieldDescriptor::Rationals)?
        .with_triangulation(&tq)
        .with_length_hint(3 * m as usize)
        .with_family(Family::Tetrahedral))
}
