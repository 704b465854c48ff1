use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qgt_core::analysis::{fit_weights, normalized};
use qgt_core::field::scalar_from_i64;
use qgt_core::homological::resolution;
use qgt_core::presentation::{deformed_relations, weighted_relations};
use qgt_core::surface::{quiver_of_surface, random_surface, surface_of_quiver};
use qgt_core::{
    build_algebra, instances, BuildOptions, Field, FieldDescriptor, FiniteDimAlgebra, Presentation, PrimeField,
    Rationals, TriangulationQuiver, WeightData,
};

fn build<F: Field>(p: &Presentation, field: F) -> FiniteDimAlgebra<F> {
    build_algebra(p, field, &BuildOptions::default()).expect("finite-dimensional")
}

fn surface_quiver(seed: u64, ordinary: usize, folded: usize, boundary: usize) -> Option<TriangulationQuiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = random_surface(&mut rng, ordinary, folded, boundary)?;
    Some(quiver_of_surface(&s).expect("valid surface"))
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    v
}

#[derive(Debug, Clone, Copy)]
enum Base {
    Markov,
    Disk,
}

impl Base {
    fn quiver(self) -> TriangulationQuiver {
        match self {
            Base::Markov => instances::markov_quiver(),
            Base::Disk => instances::triangle_disk_quiver(),
        }
    }
}

fn base() -> impl Strategy<Value = Base> {
    prop_oneof![Just(Base::Markov), Just(Base::Disk)]
}

/// Weights with c and b read as residues in `0..p` (or small integers over Q).
fn weights(tq: &TriangulationQuiver, m: u32, c: i64, b: &[i64]) -> WeightData {
    let mut w = WeightData::uniform(tq, m, scalar_from_i64(c));
    let q = tq.quiver();
    for (v, &b) in tq.border().vertices().zip(b) {
        w = w.with_b(q.vertex_id(v), scalar_from_i64(b));
    }
    w
}

fn field_and_scalars() -> impl Strategy<Value = (FieldDescriptor, i64, Vec<i64>)> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(0)].prop_flat_map(|p| {
        let (desc, lo, hi) = match p {
            0 => (FieldDescriptor::Rationals, -3i64, 3i64),
            p => (FieldDescriptor::Prime { p }, 0, p as i64 - 1),
        };
        let c = (lo..=hi).prop_filter("c is nonzero", |c| *c != 0);
        (Just(desc), c, proptest::collection::vec(lo..=hi, 3))
    })
}

struct FitJob {
    p: Presentation,
    want: WeightData,
    tq: TriangulationQuiver,
}

impl qgt_core::field::WithField for FitJob {
    type Output = Result<(), String>;

    fn run<F: Field>(self, field: F) -> Self::Output {
        let a = build(&self.p, field);
        let got = fit_weights(&a, &self.tq).ok_or("no fit")?;
        let (got, want) = (
            normalized(&got, &self.tq, a.field()),
            normalized(&self.want, &self.tq, a.field()),
        );
        if got == want {
            Ok(())
        } else {
            Err(format!("{got:?} != {want:?}"))
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabeling_keeps_orbits(seed in any::<u64>(), ordinary in 1usize..5, folded in 0usize..3, boundary in 0usize..4) {
        let tq = surface_quiver(seed, ordinary, folded, boundary);
        prop_assume!(tq.is_some());
        let tq = tq.unwrap();
        let q = tq.quiver();
        let vperm = shuffled(q.vertex_count(), seed ^ 1);
        let aperm = shuffled(q.arrow_count(), seed ^ 2);
        let moved = q.permuted(&vperm, &aperm);
        let relabeled = TriangulationQuiver::from_cycles(moved, &tq.f_perm().cycles_as_ids(q)).unwrap();
        prop_assert_eq!(relabeled.g_perm().orbit_partition(relabeled.quiver()), tq.g_perm().orbit_partition(q));
        prop_assert_eq!(relabeled.g_profile(), tq.g_profile());
        prop_assert_eq!(relabeled.border().len(), tq.border().len());
    }

    #[test]
    fn bar_and_star_are_involutions(seed in any::<u64>(), ordinary in 1usize..5, folded in 0usize..3, boundary in 0usize..4) {
        let tq = surface_quiver(seed, ordinary, folded, boundary);
        prop_assume!(tq.is_some());
        let tq = tq.unwrap();
        for a in tq.quiver().arrows() {
            prop_assert_eq!(tq.bar(tq.bar(a)), a);
            prop_assert_eq!(tq.star(tq.star(a)), a);
            prop_assert_eq!(tq.g(a), tq.bar(tq.f(a)));
        }
    }

    #[test]
    fn fixed_loops_iff_boundary(seed in any::<u64>(), ordinary in 1usize..6, folded in 0usize..3, boundary in 0usize..5) {
        let tq = surface_quiver(seed, ordinary, folded, boundary);
        prop_assume!(tq.is_some());
        let tq = tq.unwrap();
        let loops = tq.quiver().arrows().any(|a| tq.f(a) == a);
        prop_assert_eq!(loops, surface_of_quiver(&tq).boundary_components > 0);
    }

    #[test]
    fn multiplication_is_associative(b in base(), m in 1u32..3, c in 1i64..5, seed in any::<u64>()) {
        let tq = b.quiver();
        let p = weighted_relations(&tq, &weights(&tq, m, c, &[])).unwrap();
        let a = build(&p, PrimeField::new(5).unwrap());
        let f = a.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut el = || (0..a.dim()).map(|_| f.random(&mut rng)).collect::<Vec<_>>();
        let (x, y, z) = (el(), el(), el());
        prop_assert_eq!(a.multiply(&a.multiply(&x, &y), &z), a.multiply(&x, &a.multiply(&y, &z)));
        prop_assert_eq!(a.multiply(&a.one(), &x), x.clone());
        prop_assert_eq!(a.multiply(&x, &a.one()), x);
    }

    #[test]
    fn dimension_is_field_independent(b in base(), m in 1u32..3, c in 1i64..5) {
        let tq = b.quiver();
        let p = weighted_relations(&tq, &weights(&tq, m, c, &[])).unwrap();
        let d5 = build(&p, PrimeField::new(5).unwrap()).dim();
        let d7 = build(&p, PrimeField::new(7).unwrap()).dim();
        let dq = build(&p, Rationals).dim();
        prop_assert_eq!(d5, d7);
        prop_assert_eq!(d7, dq);
    }

    #[test]
    fn vertex_dimensions_follow_weights(b in base(), m in 1u32..4, c in 1i64..5) {
        let tq = b.quiver();
        let w = weights(&tq, m, c, &[]);
        let a = build(&weighted_relations(&tq, &w).unwrap(), PrimeField::new(5).unwrap());
        let r = w.resolve(&tq).unwrap();
        let q = tq.quiver();
        for v in q.vertices() {
            let want: usize = q.outgoing(v).iter().map(|&x| r.m_of(&tq, x) * tq.n(x)).sum();
            prop_assert_eq!(a.vertex_basis(v).len(), want);
        }
        prop_assert_eq!(a.dim(), r.expected_dimension(&tq));
    }

    #[test]
    fn deformation_keeps_layers(m in 1u32..3, b in subsequence(vec![0usize, 1, 2], 1..=3), p in prop_oneof![Just(2u32), Just(3)]) {
        let tq = instances::triangle_disk_quiver();
        let mut bs = [0i64; 3];
        for i in b {
            bs[i] = 1;
        }
        let field = PrimeField::new(p).unwrap();
        let plain = build(&weighted_relations(&tq, &weights(&tq, m, 1, &[])).unwrap(), field);
        let deformed = build(&deformed_relations(&tq, &weights(&tq, m, 1, &bs)).unwrap(), field);
        prop_assert_eq!(plain.radical_layers(), deformed.radical_layers());
    }

    #[test]
    fn fit_inverts_generation(b in base(), m in 1u32..3, (field, c, bs) in field_and_scalars(), deform in any::<bool>()) {
        let tq = b.quiver();
        let (w, p) = if deform && !tq.border().is_empty() {
            let w = weights(&tq, m, c, &bs);
            (w.clone(), deformed_relations(&tq, &w))
        } else {
            let w = weights(&tq, m, c, &[]);
            (w.clone(), weighted_relations(&tq, &w))
        };
        let p = p.unwrap().with_field(field).unwrap();
        let outcome = field.dispatch(FitJob { p, want: w, tq }).unwrap();
        prop_assert!(outcome.is_ok(), "{:?}", outcome);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn resolution_dimensions_balance(b in base(), m in 1u32..3, c in 1i64..5) {
        let tq = b.quiver();
        let a = build(&weighted_relations(&tq, &weights(&tq, m, c, &[])).unwrap(), PrimeField::new(5).unwrap());
        let q = a.quiver();
        let projective: Vec<usize> = q.vertices().map(|v| a.vertex_basis(v).len()).collect();
        for v in q.vertices() {
            let trace = resolution(&a, v, 4).unwrap();
            for pair in trace.steps.windows(2) {
                let cover: usize = pair[0].cover.iter().zip(&projective).map(|(k, d)| k * d).sum();
                let here: usize = pair[0].dims.iter().sum();
                let next: usize = pair[1].dims.iter().sum();
                prop_assert_eq!(cover, here + next);
            }
            prop_assert_eq!(trace.period, Some(4));
        }
    }
}
