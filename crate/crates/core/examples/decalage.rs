//! A symplectic form on V becomes a shifted quadratic form on V[1], and back.

use std::collections::BTreeMap;

use qflab::complexes::Complex;
use qflab::linalg::{Field, Matrix};
use qflab::quadratic::{decalage, inverse_decalage, Pairing};

fn main() {
    let q = Field::Rational;
    let v = Complex::concentrated(q, 0, 2);
    let omega = Pairing::new(v.clone(), v, 0, BTreeMap::from([(0, Matrix::from_i64(q, &[&[0, 1], &[-1, 0]]))])).unwrap();
    for eps in [1, -1] {
        let f = decalage(&omega, eps).unwrap();
        println!(
            "eps = {eps:>2}: carrier degrees {:?}, shift {}, nondegenerate {}",
            f.carrier().degrees(),
            f.shift(),
            f.is_nondegenerate()
        );
        let back = inverse_decalage(&f, eps).unwrap();
        println!("         round trip recovers ω: {}", back.block(0) == omega.block(0));
    }
}
