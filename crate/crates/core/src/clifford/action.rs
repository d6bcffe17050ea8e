use super::ClassicalClifford;
use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::linalg::{rank, Field, Matrix};
use crate::quadratic::hyperbolic;

/// `Cl(hyp(V; 0, 0))` acting on `ΛV`.
#[derive(Clone, Debug)]
pub struct HyperbolicAction {
    pub rank: usize,
    pub clifford: ClassicalClifford,
    /// Action of `e₁ … e_{2r}` on `ΛV` in the basis `e_T`, `T ⊆ {1..r}`.
    pub generators: Vec<Matrix>,
    /// `ρ(e_a)ρ(e_b) + ρ(e_b)ρ(e_a) = 2Q_ab` for all `a, b`.
    pub relations_hold: bool,
    /// Rank of `Cl → End(ΛV)`.
    pub structure_rank: usize,
}

impl HyperbolicAction {
    pub fn is_bijective(&self) -> bool {
        let n = 1usize << self.rank;
        self.relations_hold && self.clifford.dim() == n * n && self.structure_rank == n * n
    }
}

fn wedge(field: Field, r: usize, i: usize) -> Matrix {
    let n = 1usize << r;
    let entries = (0..n).filter(|t| t & (1 << i) == 0).map(|t| {
        let below = (t & ((1 << i) - 1)).count_ones() as i64;
        (t | (1 << i), t, field.sign(below))
    });
    Matrix::assemble(field, n, n, entries)
}

fn contract(field: Field, r: usize, i: usize) -> Matrix {
    wedge(field, r, i).transpose()
}

/// `e_v` acts by `v ∧ −`, `e_ξ` by `2ι_ξ`, scaled by the hyperbolic pairing.
pub fn hyperbolic_action(field: Field, r: usize) -> Result<HyperbolicAction> {
    if r > 6 {
        return Err(Error::Resource {
            what: "exterior algebra action".into(),
            count: 1 << (2 * r),
            cap: 1 << 12,
        });
    }
    let q = hyperbolic(&Complex::concentrated(field, 0, r), 0, 0)?;
    let gram = q.gram_matrix()?;
    let clifford = ClassicalClifford::new(gram.clone())?;
    let n = 1usize << r;
    let mut generators: Vec<Matrix> = (0..r).map(|i| wedge(field, r, i)).collect();
    for j in 0..r {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..r {
            let c = gram.get(i, r + j);
            if !c.is_zero() {
                m = m.add(&contract(field, r, i).scale(&field.mul(&field.int(2), &c)));
            }
        }
        generators.push(m);
    }
    let mut relations_hold = true;
    for a in 0..2 * r {
        for b in 0..2 * r {
            let anti = generators[a].mul(&generators[b]).add(&generators[b].mul(&generators[a]));
            let want = Matrix::identity(field, n).scale(&field.mul(&field.int(2), &gram.get(a, b)));
            relations_hold &= anti == want;
        }
    }
    let mut rows = Vec::with_capacity(clifford.dim());
    for s in 0..clifford.dim() {
        let mut m = Matrix::identity(field, n);
        for (a, g) in generators.iter().enumerate() {
            if s & (1 << a) != 0 {
                m = m.mul(g);
            }
        }
        rows.push(m.to_dense().into_iter().flatten().collect());
    }
    let structure = Matrix::from_rows_shaped(field, clifford.dim(), n * n, rows)?;
    Ok(HyperbolicAction {
        rank: r,
        clifford,
        generators,
        relations_hold,
        structure_rank: rank(&structure),
    })
}
