//! The zero form on k: H⁰ is the dual numbers and [xy − yx] survives in H⁻¹.

use qflab::clifford::{derived_clifford, h_minus_one_certificate, toen_presentation};
use qflab::complexes::Complex;
use qflab::dga::{push_class, Truncation};
use qflab::quadratic::QuadraticForm;
use qflab::Field;

fn main() {
    let q = Field::Rational;
    let zero = QuadraticForm::zero(&Complex::concentrated(q, 0, 1), 0);
    let cl = derived_clifford(&zero).unwrap();
    print!("{}", cl.presentation());
    let t = Truncation::new(cl.presentation(), 6, -1, 0, 20000).unwrap();
    println!("H⁰(F≤6) = {:?}", t.representatives(0).iter().map(|p| cl.presentation().format_poly(p)).collect::<Vec<_>>());

    let cert = h_minus_one_certificate(&zero, 6, 20000).unwrap().unwrap();
    println!("cycle {} in weight {}: nonzero {}", cert.cycle_text(), cert.weight, cert.nonzero());

    // same class after rescaling y so that d(y) = x²
    let resc = cl.toen_rescaling().unwrap();
    assert_eq!(resc.target(), &toen_presentation(q));
    let pushed = push_class(&resc, &cl.presentation().parse_poly("x*y - y*x").unwrap(), 6, 20000).unwrap();
    println!("image {} nonzero {}", resc.target().format_poly(&pushed.image), pushed.nonzero);
}
