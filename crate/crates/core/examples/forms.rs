//! Shifted quadratic forms: validation, adjoints, nondegeneracy, sums and pullbacks.

use std::collections::BTreeMap;

use qflab::complexes::{ChainMap, Complex};
use qflab::linalg::{Field, Matrix};
use qflab::quadratic::{make_form, orthogonal_sum, pullback, qf_space_dim, QuadraticForm};

fn main() {
    let q = Field::Rational;
    let g = QuadraticForm::gram(q, Matrix::from_i64(q, &[&[1, 0], &[0, -1]])).unwrap();
    println!("diag(1,-1): nondegenerate {} (by cohomology {})", g.is_nondegenerate(), g.is_nondegenerate_by_cohomology());

    // [a → b] in degrees −1, 0 with q(a, b) = 1 and shift 1
    let ab = Complex::two_term(q, -1, Matrix::identity(q, 1)).unwrap();
    let one = Matrix::identity(q, 1);
    let f = make_form(&ab, 1, BTreeMap::from([(-1, one.clone()), (0, one)])).unwrap();
    println!("shift-1 form on an acyclic complex: nondegenerate {}", f.is_nondegenerate());
    let bad = make_form(&Complex::concentrated(q, 0, 2), 0, BTreeMap::from([(0, Matrix::from_i64(q, &[&[0, 1], &[0, 0]]))]));
    println!("asymmetric Gram: {}", bad.unwrap_err());

    let s = orthogonal_sum(&g, &g).unwrap();
    println!("sum Gram = {:?}", s.gram_matrix().unwrap().to_dense());
    let k = Complex::concentrated(q, 0, 1);
    let diag = ChainMap::new(k, g.carrier().clone(), 0, BTreeMap::from([(0, Matrix::from_i64(q, &[&[1], &[1]]))])).unwrap();
    println!("pullback along the diagonal is zero: {}", pullback(&diag, &g).unwrap().is_zero());
    for s in [0, 2, 4] {
        println!("dim of shift-{s} forms on k[2]: {}", qf_space_dim(&Complex::concentrated(q, -2, 1), s));
    }
}
