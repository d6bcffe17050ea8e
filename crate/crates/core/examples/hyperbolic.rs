//! hyp(C; n, m) on a few complexes, always nondegenerate.

use qflab::complexes::Complex;
use qflab::linalg::{Field, Matrix};
use qflab::quadratic::hyperbolic;

fn main() {
    let q = Field::Rational;
    let h = hyperbolic(&Complex::concentrated(q, 0, 1), 0, 0).unwrap();
    println!("hyp(k; 0, 0) Gram = {:?}", h.gram_matrix().unwrap().to_dense());
    let c = Complex::two_term(q, -1, Matrix::from_i64(q, &[&[2, 0]])).unwrap();
    for n in -1..=1 {
        for m in -1..=1 {
            let h = hyperbolic(&c, n, m).unwrap();
            println!("hyp(C; {n:>2}, {m:>2}): shift {:>2}, nondegenerate {}", h.shift(), h.is_nondegenerate());
        }
    }
}
