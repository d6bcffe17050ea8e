use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::QuadraticForm;
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// Classical invariants of a nondegenerate rational form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwInvariants {
    pub rank: usize,
    /// Squarefree integer representing the determinant modulo squares.
    pub discriminant: BigInt,
    pub signature: i64,
}

fn squarefree(n: &BigInt) -> BigInt {
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out * rest * sign
}

/// Squarefree class of a nonzero rational modulo squares.
pub fn square_class(x: &Scalar) -> BigInt {
    squarefree(&(x.numer() * x.denom()))
}

/// Diagonal entries of a congruence diagonalisation of a symmetric matrix.
pub fn diagonalize(gram: &[Vec<Scalar>]) -> Vec<Scalar> {
    let n = gram.len();
    let mut a: Vec<Vec<Scalar>> = gram.to_vec();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k ← e_k + e_j makes the pivot 2 a_kj
                for c in 0..n {
                    let v = &a[k][c] + &a[j][c];
                    a[k][c] = v;
                }
                for r in 0..n {
                    let v = &a[r][k] + &a[r][j];
                    a[r][k] = v;
                }
            }
        }
        let p = a[k][k].clone();
        diag.push(p.clone());
        if p.is_zero() {
            continue;
        }
        let inv = p.recip().expect("nonzero pivot");
        for j in k + 1..n {
            let c = &a[j][k] * &inv;
            if c.is_zero() {
                continue;
            }
            for t in 0..n {
                let v = &a[j][t] - &(&c * &a[k][t]);
                a[j][t] = v;
            }
            for t in 0..n {
                let v = &a[t][j] - &(&c * &a[t][k]);
                a[t][j] = v;
            }
        }
    }
    diag
}

/// Rank, discriminant and signature of a degree-0, shift-0 nondegenerate form over ℚ.
pub fn gw_invariants(q: &QuadraticForm) -> Result<GwInvariants> {
    if q.field() != Field::Rational {
        return Err(Error::Precondition("invariants are defined over Q only".into()));
    }
    let gram = q.gram_matrix()?;
    let diag = diagonalize(&gram.to_dense());
    if diag.iter().any(Scalar::is_zero) {
        return Err(Error::Precondition("form is degenerate".into()));
    }
    let det = diag.iter().fold(Scalar::one(), |acc, x| acc * x);
    let pos = diag.iter().filter(|x| x.is_positive()).count() as i64;
    let neg = diag.len() as i64 - pos;
    Ok(GwInvariants {
        rank: diag.len(),
        discriminant: square_class(&det),
        signature: pos - neg,
    })
}

/// Discriminant class of an orthogonal sum.
pub fn combine_discriminants(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    squarefree(&((a / &g) * (b / &g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Complex;
    use crate::linalg::Matrix;
    use crate::quadratic::hyperbolic;

    #[test]
    fn classical_examples() {
        let f = Field::Rational;
        let id = QuadraticForm::gram(f, Matrix::identity(f, 2)).unwrap();
        assert_eq!(
            gw_invariants(&id).unwrap(),
            GwInvariants {
                rank: 2,
                discriminant: BigInt::one(),
                signature: 2
            }
        );
        let h = hyperbolic(&Complex::concentrated(f, 0, 1), 0, 0).unwrap();
        let inv = gw_invariants(&h).unwrap();
        assert_eq!((inv.rank, inv.discriminant, inv.signature), (2, BigInt::from(-1), 0));
    }

    #[test]
    fn square_classes() {
        assert_eq!(square_class(&Scalar::from_int(12)), BigInt::from(3));
        assert_eq!(square_class(&Scalar::from_frac(-1, 8)), BigInt::from(-2));
        assert_eq!(combine_discriminants(&BigInt::from(6), &BigInt::from(-10)), BigInt::from(-15));
    }
}
