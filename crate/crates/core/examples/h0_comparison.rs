//! H⁰ of the derived Clifford algebra against the classical Clifford algebra.

use qflab::clifford::{h0_derived, ClassicalClifford};
use qflab::linalg::Matrix;
use qflab::quadratic::QuadraticForm;
use qflab::Field;

fn main() {
    let q = Field::Rational;
    let hyp = ClassicalClifford::new(Matrix::from_i64(q, &[&[0, 1], &[1, 0]])).unwrap();
    for (k, row) in hyp.table() {
        println!("{k:>8} = {row:?}");
    }
    for gram in [vec![vec![1]], vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 2]]] {
        let rows: Vec<&[i64]> = gram.iter().map(|r| r.as_slice()).collect();
        let form = QuadraticForm::gram(q, Matrix::from_i64(q, &rows)).unwrap();
        let h = h0_derived(&form, 2 * gram.len() as i32, 20000).unwrap();
        println!(
            "rank {}: dim H⁰(F≤{}) = {}, classical {}, structure constants agree {:?}",
            gram.len(),
            h.w_max,
            h.dim,
            h.classical_dim(),
            h.structure
        );
    }
}
