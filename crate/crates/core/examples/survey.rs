//! Dimensions, periods of simples and symmetric witnesses for the stock instances over GF(5).

use qgt_core::algebra::symmetric_form;
use qgt_core::homological::period_of_simple;
use qgt_core::{build_algebra, instances, BuildOptions, PrimeField};

fn main() {
    let gf5 = PrimeField::new(5).expect("prime");
    let cases = [
        ("markov m=1", instances::markov(1, 1)),
        ("markov m=2", instances::markov(2, 1)),
        ("disk m=1", instances::triangle_disk(1, 1)),
        (
            "torus#P (3,2,1,1)",
            instances::torus_projective([3, 2, 1, 1], [1, 1, 1, 1]).expect("valid weights"),
        ),
        ("tetrahedral (1,1)", instances::tetrahedral(1, 1)),
        ("tetrahedral (2,1)", instances::tetrahedral(2, 1)),
        ("tetrahedral (1,0)", instances::tetrahedral(1, 0)),
    ];
    println!("{:<20} {:>5}  {:<24} symmetric", "instance", "dim", "periods");
    for (name, p) in &cases {
        let a = build_algebra(p, gf5, &BuildOptions::default()).expect("finite-dimensional");
        let periods: Vec<String> = a
            .quiver()
            .vertices()
            .map(|v| match period_of_simple(&a, v, 8).expect("vertex in range") {
                Some(n) => n.to_string(),
                None => "-".into(),
            })
            .collect();
        let sym = symmetric_form(&a, 32, 0).is_witness();
        println!("{name:<20} {:>5}  {:<24} {sym}", a.dim(), periods.join(" "));
    }
}
