//! Seeded generators of small complexes and forms for tests and examples.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complexes::Complex;
use crate::error::Result;
use crate::linalg::{kernel_basis, Field, Matrix, Scalar};
use crate::quadratic::{form_from_sym2_functional, sym2_cocycle_functionals, QuadraticForm};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `−bound ..= bound`.
pub fn random_matrix<R: Rng>(rng: &mut R, field: Field, nrows: usize, ncols: usize, bound: i64) -> Matrix {
    let entries = (0..nrows)
        .flat_map(|i| (0..ncols).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, field.int(rng.gen_range(-bound..=bound))))
        .collect::<Vec<_>>();
    Matrix::assemble(field, nrows, ncols, entries)
}

/// Complex supported in `lo ..= hi` with `dim ≤ max_dim` per degree. Each
/// `d_{i+1}` factors through the cokernel of `d_i`, so `d² = 0` by construction.
pub fn random_complex<R: Rng>(rng: &mut R, field: Field, lo: i32, hi: i32, max_dim: usize) -> Complex {
    let dims: Vec<(i32, usize)> = (lo..=hi).map(|i| (i, rng.gen_range(0..=max_dim))).collect();
    let dim = |i: i32| dims.iter().find(|(j, _)| *j == i).map_or(0, |(_, n)| *n);
    let mut diffs = Vec::new();
    let mut prev: Option<Matrix> = None;
    for i in lo..hi {
        let (src, tgt) = (dim(i), dim(i + 1));
        let d = match &prev {
            None => random_matrix(rng, field, tgt, src, 2),
            Some(p) => {
                let coker = kernel_basis(&p.transpose()).transpose();
                random_matrix(rng, field, tgt, coker.nrows(), 2).mul(&coker)
            }
        };
        prev = Some(d.clone());
        diffs.push((i, d));
    }
    Complex::from_dims(field, &dims, diffs).expect("d² = 0 by construction")
}

/// Random chain-level form of shift `s`: a random combination of the
/// cocycle functionals on `(Sym²C)^{−s}`.
pub fn random_form<R: Rng>(rng: &mut R, c: &Complex, s: i32) -> Result<QuadraticForm> {
    let field = c.field();
    let basis = sym2_cocycle_functionals(c, s);
    let mut phi = vec![Scalar::zero(); basis.ncols()];
    for row in 0..basis.nrows() {
        let k = field.int(rng.gen_range(-2..=2));
        for (j, x) in basis.row(row) {
            phi[*j] = field.add(&phi[*j], &field.mul(&k, x));
        }
    }
    form_from_sym2_functional(c, s, &phi)
}

/// Diagonal Gram form with entries drawn from `values`.
pub fn random_diagonal<R: Rng>(rng: &mut R, field: Field, r: usize, values: &[i64]) -> QuadraticForm {
    let entries = (0..r)
        .map(|i| (i, i, field.int(values[rng.gen_range(0..values.len())])))
        .collect::<Vec<_>>();
    QuadraticForm::gram(field, Matrix::assemble(field, r, r, entries)).expect("diagonal is symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexes_are_valid_and_reproducible() {
        let f = Field::Rational;
        let a = random_complex(&mut rng(7), f, -3, 1, 4);
        let b = random_complex(&mut rng(7), f, -3, 1, 4);
        assert_eq!(a, b);
        let mut r = rng(1);
        for _ in 0..50 {
            let c = random_complex(&mut r, f, -2, 1, 3);
            random_form(&mut r, &c, 0).unwrap().pairing().check_chain().unwrap();
        }
    }
}
