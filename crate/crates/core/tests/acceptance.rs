//! End-to-end acceptance run: one line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qgt_core::algebra::symmetric_form;
use qgt_core::analysis::{
    f_partition, find_triangulation, fit_weights, jj_dims_check, normalized, propagation_check, relation_census,
};
use qgt_core::field::scalar_from_i64;
use qgt_core::homological::period_of_simple;
use qgt_core::quiver::{find_isomorphism, recognize_special, SpecialKind};
use qgt_core::surface::{quiver_of_surface, random_surface, surface_of_quiver};
use qgt_core::{
    build_algebra, instances, BuildOptions, Field, FiniteDimAlgebra, Presentation, PrimeField, Quiver, Rationals,
    TriangulationQuiver, WeightData,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_DIMENSIONS: Duration = Duration::from_secs(60);
const BUDGET_TETRAHEDRAL: Duration = Duration::from_secs(60);
const BUDGET_PERIODS: Duration = Duration::from_secs(300);
const BUDGET_SYMMETRIC: Duration = Duration::from_secs(30);
const PERIOD_BOUND: usize = 8;
const SYMMETRIC_TRIALS: usize = 32;
const SEED: u64 = 0;
const RANDOM_SURFACES: usize = 50;
const ASSOCIATIVITY_TRIPLES: usize = 20;

type Check = fn() -> Result<String, String>;

struct Instance {
    name: &'static str,
    p: Presentation,
    weights: Option<WeightData>,
    dim: usize,
}

fn uniform(p: &Presentation, m: u32) -> WeightData {
    WeightData::uniform(&p.triangulation().unwrap(), m, scalar_from_i64(1))
}

fn weighted_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for (name, m, dim) in [("markov m=1", 1, 36), ("markov m=2", 2, 72)] {
        let p = instances::markov(m, 1);
        out.push(Instance {
            name,
            weights: Some(uniform(&p, m)),
            p,
            dim,
        });
    }
    for (name, m, dim) in [("disk m=1", 1, 36), ("disk m=2", 2, 72)] {
        let p = instances::triangle_disk(m, 1);
        out.push(Instance {
            name,
            weights: Some(uniform(&p, m)),
            p,
            dim,
        });
    }
    let p = instances::torus_projective([3, 2, 1, 1], [1, 1, 1, 1]).unwrap();
    out.push(Instance {
        name: "torus#P (3,2,1,1)",
        weights: Some(instances::torus_weights([3, 2, 1, 1], [1, 1, 1, 1])),
        p,
        dim: 3 + 8 + 9 + 36,
    });
    out
}

fn tetrahedral_instances() -> Vec<Instance> {
    [
        ("tetrahedral (1,1)", 1, 1, 36),
        ("tetrahedral (2,1)", 2, 1, 72),
        ("tetrahedral (2,0)", 2, 0, 72),
    ]
    .into_iter()
    .map(|(name, m, lambda, dim)| Instance {
        name,
        p: instances::tetrahedral(m, lambda),
        weights: None,
        dim,
    })
    .collect()
}

fn deformed_disk() -> Instance {
    let p = instances::triangle_disk_deformed(1, 1, [1, 0, 0]);
    let w = uniform(&p, 1).with_b("1", scalar_from_i64(1));
    Instance {
        name: "deformed disk b=(1,0,0)",
        p,
        weights: Some(w),
        dim: 36,
    }
}

fn build<F: Field>(p: &Presentation, field: F) -> Result<FiniteDimAlgebra<F>, String> {
    build_algebra(p, field, &BuildOptions::default()).map_err(|e| e.to_string())
}

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).expect("prime")
}

fn timed(budget: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t > budget {
        Err(format!("took {t:.1?}, budget {budget:?}"))
    } else {
        Ok(())
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dimensions() -> Result<String, String> {
    let start = Instant::now();
    let mut got = Vec::new();
    for inst in weighted_instances() {
        let a = build(&inst.p, gf(5))?;
        ensure(a.dim() == inst.dim, || {
            format!("{}: dim {} != {}", inst.name, a.dim(), inst.dim)
        })?;
        got.push(a.dim().to_string());
    }
    timed(BUDGET_DIMENSIONS, start)?;
    Ok(got.join(", "))
}

fn tetrahedral_dimensions() -> Result<String, String> {
    let start = Instant::now();
    let mut got = Vec::new();
    for inst in tetrahedral_instances() {
        let a = build(&inst.p, gf(5))?;
        ensure(a.dim() == inst.dim, || {
            format!("{}: dim {} != {}", inst.name, a.dim(), inst.dim)
        })?;
        got.push(a.dim().to_string());
    }
    timed(BUDGET_TETRAHEDRAL, start)?;
    Ok(got.join(", "))
}

fn periods_of<F: Field>(a: &FiniteDimAlgebra<F>) -> Result<Vec<Option<usize>>, String> {
    a.quiver()
        .vertices()
        .map(|v| period_of_simple(a, v, PERIOD_BOUND).map_err(|e| e.to_string()))
        .collect()
}

fn all_four<F: Field>(name: &str, a: &FiniteDimAlgebra<F>) -> Result<(), String> {
    let ps = periods_of(a)?;
    ensure(ps.iter().all(|p| *p == Some(4)), || format!("{name}: periods {ps:?}"))
}

fn periods() -> Result<String, String> {
    let start = Instant::now();
    let mut checked = 0;
    for inst in weighted_instances().into_iter().chain(tetrahedral_instances()) {
        if inst.name == "disk m=2" || inst.name == "tetrahedral (2,0)" {
            continue;
        }
        all_four(inst.name, &build(&inst.p, gf(5))?)?;
        checked += 1;
    }
    for m in [1, 2] {
        all_four("markov over Q", &build(&instances::markov(m, 1), Rationals)?)?;
        checked += 1;
    }
    let singular = periods_of(&build(&instances::tetrahedral(1, 0), gf(5))?)?;
    ensure(singular.iter().any(|p| *p != Some(4)), || {
        format!("tetrahedral (1,0) has period 4 everywhere: {singular:?}")
    })?;
    timed(BUDGET_PERIODS, start)?;
    Ok(format!(
        "{checked} algebras with period 4, tetrahedral (1,0) periods {singular:?}"
    ))
}

fn cartan() -> Result<String, String> {
    let mut dets = Vec::new();
    for p in [
        instances::tetrahedral(1, 1),
        instances::torus_projective([3, 2, 1, 1], [1, 1, 1, 1]).unwrap(),
    ] {
        let d = build(&p, gf(5))?.cartan().determinant;
        ensure(d == 0.into(), || format!("determinant {d}"))?;
        dets.push(d.to_string());
    }
    Ok(format!("determinants {}", dets.join(", ")))
}

fn symmetric() -> Result<String, String> {
    let start = Instant::now();
    let mut n = 0;
    for inst in weighted_instances().into_iter().chain(tetrahedral_instances()) {
        let a = build(&inst.p, gf(5))?;
        ensure(symmetric_form(&a, SYMMETRIC_TRIALS, SEED).is_witness(), || {
            format!("{}: no witness", inst.name)
        })?;
        n += 1;
    }
    let deformed = deformed_disk();
    ensure(
        symmetric_form(&build(&deformed.p, gf(2))?, SYMMETRIC_TRIALS, SEED).is_witness(),
        || "deformed disk over GF(2): no witness".into(),
    )?;
    let q = Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap();
    let control = Presentation::new(q, vec![], qgt_core::FieldDescriptor::Rationals).unwrap();
    ensure(
        !symmetric_form(&build(&control, Rationals)?, SYMMETRIC_TRIALS, SEED).is_witness(),
        || "A2 path algebra reported symmetric".into(),
    )?;
    timed(BUDGET_SYMMETRIC, start)?;
    Ok(format!("{} witnesses, A2 control rejected", n + 1))
}

fn census() -> Result<String, String> {
    let mut n = 0;
    for inst in weighted_instances().into_iter().chain(tetrahedral_instances()) {
        let a = build(&inst.p, gf(5))?;
        let layers = jj_dims_check(&a);
        ensure(layers.pass, || {
            format!("{}: layer offenders {:?}", inst.name, layers.offenders)
        })?;
        let c = relation_census(&a).map_err(|e| e.to_string())?;
        ensure(c.two_relations_everywhere(), || {
            format!("{}: not two relations everywhere", inst.name)
        })?;
        let tq = inst.p.triangulation().unwrap();
        let markov = recognize_special(&tq) == SpecialKind::Markov;
        let prop = propagation_check(a.quiver(), &c, markov);
        ensure(prop.is_consistent(), || {
            format!("{}: {:?}", inst.name, prop.inconsistencies)
        })?;
        n += 1;
    }
    Ok(format!("{n} algebras conform"))
}

fn round_trip() -> Result<String, String> {
    let mut n = 0;
    for inst in weighted_instances().into_iter().chain(tetrahedral_instances()) {
        let a = build(&inst.p, gf(5))?;
        let c = relation_census(&a).map_err(|e| e.to_string())?;
        let found = find_triangulation(&a, &c).ok_or_else(|| format!("{}: no f found", inst.name))?;
        let want = inst.p.triangulation().unwrap();
        ensure(f_partition(&found) == f_partition(&want), || {
            format!("{}: wrong orbits", inst.name)
        })?;
        n += 1;
    }
    Ok(format!("{n}/{n} orbit partitions recovered"))
}

fn fit_one<F: Field>(inst: &Instance, field: F) -> Result<(), String> {
    let a = build(&inst.p, field)?;
    let tq = inst.p.triangulation().unwrap();
    let want = inst.weights.as_ref().expect("weighted instance");
    let got = fit_weights(&a, &tq).ok_or_else(|| format!("{}: no fit over {}", inst.name, a.field_descriptor()))?;
    ensure(
        normalized(&got, &tq, a.field()) == normalized(want, &tq, a.field()),
        || format!("{}: fitted {} over {}", inst.name, got.summary(), a.field_descriptor()),
    )
}

fn fit() -> Result<String, String> {
    let mut n = 0;
    for inst in weighted_instances() {
        fit_one(&inst, gf(5))?;
        fit_one(&inst, Rationals)?;
        n += 2;
    }
    fit_one(&deformed_disk(), gf(2))?;
    Ok(format!("{} fits exact", n + 1))
}

fn surfaces() -> Result<String, String> {
    let figures = [
        (
            "disk",
            instances::triangle_disk_surface(),
            instances::triangle_disk_quiver(),
        ),
        ("markov", instances::markov_sphere(), instances::markov_quiver()),
        (
            "tetrahedron",
            instances::tetrahedron_surface(),
            instances::tetrahedral_quiver(),
        ),
    ];
    for (name, s, tq) in &figures {
        let built = quiver_of_surface(s).map_err(|e| e.to_string())?;
        ensure(find_isomorphism(&built, tq).is_some(), || {
            format!("{name}: quiver differs")
        })?;
    }
    let invariants = |tq: TriangulationQuiver| {
        let r = surface_of_quiver(&tq);
        (r.euler_characteristic, r.orientable, r.boundary_components)
    };
    let disk = invariants(instances::triangle_disk_quiver());
    ensure(disk == (1, true, 1), || format!("disk {disk:?}"))?;
    let sphere = invariants(instances::markov_quiver());
    ensure(sphere == (2, true, 0), || format!("markov {sphere:?}"))?;
    let torus = invariants(instances::torus_projective_quiver());
    ensure(!torus.1 && torus.2 == 0, || format!("torus#P {torus:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..RANDOM_SURFACES {
        let s = random_surface(&mut rng, 1 + i % 5, i % 3, 4).ok_or_else(|| format!("random surface {i}: no draw"))?;
        let tq = quiver_of_surface(&s).map_err(|e| e.to_string())?;
        let loops = tq.quiver().arrows().any(|a| tq.f(a) == a);
        let boundary = surface_of_quiver(&tq).boundary_components > 0;
        ensure(loops == boundary, || {
            format!("random surface {i}: loops {loops}, boundary {boundary}")
        })?;
    }
    Ok(format!(
        "3 figures, invariants {disk:?} {sphere:?} {torus:?}, {RANDOM_SURFACES} random surfaces"
    ))
}

fn random_element<F: Field, R: Rng>(a: &FiniteDimAlgebra<F>, rng: &mut R) -> Vec<F::Elem> {
    (0..a.dim()).map(|_| a.field().random(rng)).collect()
}

fn properties() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut all = weighted_instances();
    all.extend(tetrahedral_instances());
    for inst in &all {
        let a = build(&inst.p, gf(5))?;
        for _ in 0..ASSOCIATIVITY_TRIPLES {
            let (x, y, z) = (
                random_element(&a, &mut rng),
                random_element(&a, &mut rng),
                random_element(&a, &mut rng),
            );
            ensure(
                a.multiply(&a.multiply(&x, &y), &z) == a.multiply(&x, &a.multiply(&y, &z)),
                || format!("{}: (xy)z != x(yz)", inst.name),
            )?;
        }
        let d7 = build(&inst.p, gf(7))?.dim();
        let dq = build(&inst.p, Rationals)?.dim();
        ensure(a.dim() == d7 && d7 == dq, || {
            format!("{}: dims {} {} {}", inst.name, a.dim(), d7, dq)
        })?;
        if let Some(w) = &inst.weights {
            let tq = inst.p.triangulation().unwrap();
            let r = w.resolve(&tq).map_err(|e| e.to_string())?;
            let q = a.quiver();
            for v in q.vertices() {
                let want: usize = q.outgoing(v).iter().map(|&x| r.m_of(&tq, x) * tq.n(x)).sum();
                let got = a.vertex_basis(v).len();
                ensure(got == want, || {
                    format!("{}: dim e_{}A = {got}, expected {want}", inst.name, q.vertex_id(v))
                })?;
            }
        }
    }
    for m in [1, 2] {
        let plain = build(&instances::triangle_disk(m, 1), gf(2))?.radical_layers();
        let deformed = build(&instances::triangle_disk_deformed(m, 1, [1, 0, 0]), gf(2))?.radical_layers();
        ensure(plain == deformed, || {
            format!("disk m={m}: layers {plain:?} vs {deformed:?}")
        })?;
    }
    Ok(format!("{} instances, {ASSOCIATIVITY_TRIPLES} triples each", all.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("dimension formula", dimensions),
        ("tetrahedral dimensions", tetrahedral_dimensions),
        ("period 4 of simples", periods),
        ("singular Cartan matrix", cartan),
        ("symmetric witness", symmetric),
        ("relation census", census),
        ("triangulation round trip", round_trip),
        ("weight fit round trip", fit),
        ("surface correspondence", surfaces),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{t:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
