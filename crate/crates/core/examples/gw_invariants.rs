//! Named fixtures and their rank, discriminant and signature.

use qflab::linalg::Scalar;
use qflab::quadratic::{fixture, fixture_names, gw_invariants, orthogonal_sum};
use qflab::Field;

fn main() {
    let q = Field::Rational;
    println!("fixtures: {:?}", fixture_names());
    let cases: [(&str, Vec<Scalar>); 4] = [
        ("hyperbolic", vec![q.int(2)]),
        ("trace_gl", vec![q.int(2)]),
        ("diagonal", vec![q.int(3), Scalar::from_frac(-1, 2), q.int(5)]),
        ("poincare_sphere", vec![q.int(2)]),
    ];
    for (name, params) in &cases {
        let f = fixture(q, name, params).unwrap().form;
        match gw_invariants(&f) {
            Ok(i) => println!("{name:>16}: rank {}, disc {}, signature {}", i.rank, i.discriminant, i.signature),
            Err(e) => println!("{name:>16}: {e}"),
        }
    }
    let a = fixture(q, "diagonal", &[q.int(2), q.int(3)]).unwrap().form;
    let b = fixture(q, "diagonal", &[q.int(-6)]).unwrap().form;
    let s = gw_invariants(&orthogonal_sum(&a, &b).unwrap()).unwrap();
    println!("⟨2,3⟩ ⊥ ⟨−6⟩: {s:?}");
}
