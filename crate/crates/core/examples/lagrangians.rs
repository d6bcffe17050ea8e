//! Lagrangian structures and the shifted form on a derived intersection.

use std::collections::BTreeMap;

use qflab::complexes::{ChainMap, Complex};
use qflab::linalg::{Field, Matrix};
use qflab::quadratic::{fiber_product_form, hyperbolic, is_lagrangian, orthogonal_sum, HomotopyWitness, QuadraticForm};

fn line(q: Field, rows: &[&[i64]], target: &Complex) -> ChainMap {
    let k = Complex::concentrated(q, 0, 1);
    ChainMap::new(k, target.clone(), 0, BTreeMap::from([(0, Matrix::from_i64(q, rows))])).unwrap()
}

fn main() {
    let q = Field::Rational;
    let plane = hyperbolic(&Complex::concentrated(q, 0, 1), 0, 0).unwrap();
    let g = HomotopyWitness::zero(&Complex::concentrated(q, 0, 1), 0);
    let l1 = line(q, &[&[1], &[0]], plane.carrier());
    let l2 = line(q, &[&[0], &[1]], plane.carrier());
    println!("isotropic line lagrangian: {}", is_lagrangian(&l1, &plane, &g).unwrap());
    match is_lagrangian(&line(q, &[&[1], &[1]], plane.carrier()), &plane, &g) {
        Ok(b) => println!("diagonal line: {b}"),
        Err(e) => println!("diagonal line: {e}"),
    }
    let z = fiber_product_form(&plane, &l1, &g, &l2, &g).unwrap();
    println!("L1 ×_h L2: shift {}, nondegenerate {}", z.shift(), z.is_nondegenerate());

    let v = QuadraticForm::gram(q, Matrix::identity(q, 2)).unwrap();
    let vv = orthogonal_sum(&v, &v.neg()).unwrap();
    let diag = ChainMap::new(
        v.carrier().clone(),
        vv.carrier().clone(),
        0,
        BTreeMap::from([(0, Matrix::from_i64(q, &[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]))]),
    )
    .unwrap();
    let gv = HomotopyWitness::zero(v.carrier(), 0);
    println!("diagonal in (V⊕V, q⊥−q) lagrangian: {}", is_lagrangian(&diag, &vv, &gv).unwrap());
    let lp = fiber_product_form(&vv, &diag, &gv, &diag, &gv).unwrap();
    println!("loop space form: shift {}, nondegenerate {}", lp.shift(), lp.is_nondegenerate());
}
