//! Q = 0 in rank 2: y₁₂ − y₂₁ is a nonzero class, detected two ways.

use qflab::clifford::h_minus_one_certificate;
use qflab::complexes::Complex;
use qflab::linalg::Matrix;
use qflab::quadratic::QuadraticForm;
use qflab::Field;

fn main() {
    let q = Field::Rational;
    let zero = QuadraticForm::zero(&Complex::concentrated(q, 0, 2), 0);
    let cert = h_minus_one_certificate(&zero, 6, 20000).unwrap().unwrap();
    println!("cycle: {}", cert.cycle_text());
    println!("nonzero in its weight piece: {}", cert.per_weight);
    println!("detection dga:\n{}", cert.detection.target());
    println!("image {} nonzero {} definitive {}", cert.detection.target().format_poly(&cert.pushed.image), cert.pushed.nonzero, cert.pushed.definitive);

    let id = QuadraticForm::gram(q, Matrix::identity(q, 2)).unwrap();
    println!("Q = identity: certificate {:?}", h_minus_one_certificate(&id, 6, 20000).unwrap().map(|c| c.cycle_text()));
}
