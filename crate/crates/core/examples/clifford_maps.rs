//! Morphisms of derived Clifford algebras from isometries and orthogonal sums.

use std::collections::BTreeMap;

use qflab::clifford::{clifford_map, clifford_sum_iso};
use qflab::complexes::{ChainMap, Complex};
use qflab::linalg::Matrix;
use qflab::quadratic::{make_form, HomotopyWitness, QuadraticForm};
use qflab::Field;

fn main() {
    let q = Field::Rational;
    // ⟨a, b⟩ → ⟨c⟩ with d a = c; h(a, c) = 1 makes q₁ = diag(2, 0) homotopic to 0
    let c = Complex::two_term(q, 0, Matrix::from_i64(q, &[&[1, 0]])).unwrap();
    let q1 = make_form(&c, 0, BTreeMap::from([(0, Matrix::from_i64(q, &[&[2, 0], &[0, 0]]))])).unwrap();
    let q2 = QuadraticForm::zero(&c, 0);
    let h = HomotopyWitness::new(
        &c,
        0,
        BTreeMap::from([(0, Matrix::from_i64(q, &[&[1], &[0]])), (1, Matrix::from_i64(q, &[&[1, 0]]))]),
    )
    .unwrap();
    let m = clifford_map(&ChainMap::identity(&c), &q1, &q2, &h).unwrap();
    for (g, img) in m.table() {
        if g.starts_with('y') && img != g {
            println!("{g} ↦ {img}");
        }
    }

    let one = QuadraticForm::gram(q, Matrix::identity(q, 1)).unwrap();
    let two = QuadraticForm::gram(q, Matrix::from_i64(q, &[&[0, 1], &[1, 0]])).unwrap();
    let iso = clifford_sum_iso(&one, &two).unwrap();
    println!("sum iso: {} generators → {}", iso.source.presentation().generators().len(), iso.target.generators().len());
    println!("{:?}", iso.h0(6, 20000).unwrap());
}
