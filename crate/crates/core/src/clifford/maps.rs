use std::collections::BTreeMap;

use super::compare::{check_structure, h0_data, pbw_elements};
use super::{derived_clifford, CliffordPresentation};
use crate::complexes::{induced_map, parity_sign, ChainMap};
use crate::dga::{graded_tensor, make_morphism, tensor_inclusion_word, DgaMorphism, Poly, Presentation, Truncation};
use crate::error::{Error, Result};
use crate::linalg::{rank, Scalar};
use crate::quadratic::{check_isometry_witness, orthogonal_sum, HomotopyWitness, QuadraticForm};

/// Columns of `f` on `C^i` as `(target global index, coefficient)` lists.
fn image_columns(f: &ChainMap, tgt: &CliffordPresentation, i: i32) -> Vec<Vec<(usize, Scalar)>> {
    f.block(i)
        .sparse_columns()
        .into_iter()
        .map(|col| col.into_iter().map(|(m, x)| (tgt.global_index(i, m), x)).collect())
        .collect()
}

/// `f_h : Cliff(C₁, q₁) → Cliff(C₂, q₂)` for an isometry `q₁ − f*q₂ = δh`:
/// `x_c ↦ x_{fc}`, `y_{c,c′} ↦ y_{fc,fc′} − 2(−1)^{n(|c|+1)} h(c, c′)`.
pub fn clifford_map(
    f: &ChainMap,
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    h: &HomotopyWitness,
) -> Result<DgaMorphism> {
    if f.degree() != 0 {
        return Err(Error::Precondition("Clifford maps need a degree-0 chain map".into()));
    }
    if !check_isometry_witness(f, q1, q2, h)? {
        return Err(Error::Witness("q₁ − f*q₂ ≠ δh".into()));
    }
    let src = derived_clifford(q1)?;
    let tgt = derived_clifford(q2)?;
    let field = q1.field();
    let n = src.n();
    let s = q1.shift();
    let cols: BTreeMap<i32, _> = src
        .complex()
        .degrees()
        .into_iter()
        .map(|i| (i, image_columns(f, &tgt, i)))
        .collect();
    let names = src.presentation().generators();
    let mut images = BTreeMap::new();
    for a in 0..src.rank() {
        let (i, k) = src.element(a);
        let mut p = Poly::zero();
        for (m, x) in &cols[&i][k] {
            p.add_term(field, vec![tgt.x_generator(*m)], x);
        }
        images.insert(names[src.x_generator(a) as usize].name.clone(), p);
    }
    for a in 0..src.rank() {
        let (i, k) = src.element(a);
        for b in 0..src.rank() {
            let (j, l) = src.element(b);
            let mut p = Poly::zero();
            for (m, x) in &cols[&i][k] {
                for (m2, y) in &cols[&j][l] {
                    p.add_term(field, vec![tgt.y_generator(*m, *m2)], &field.mul(x, y));
                }
            }
            if j == 1 - s - i {
                let v = h.value(i, k, l);
                if !v.is_zero() {
                    let c = field.mul(&field.int(-2 * parity_sign((n * (i + 1)) as i64)), &v);
                    p.add_term(field, vec![], &c);
                }
            }
            images.insert(names[src.y_generator(a, b) as usize].name.clone(), p);
        }
    }
    make_morphism(src.presentation(), tgt.presentation(), images)
}

/// `Cliff(C₁ ⊕ C₂, q₁ ⊥ q₂) → Cliff(C₁, q₁) ⊗ʷ Cliff(C₂, q₂)`.
#[derive(Clone, Debug)]
pub struct SumIso {
    pub source: CliffordPresentation,
    pub left: CliffordPresentation,
    pub right: CliffordPresentation,
    pub target: Presentation,
    pub morphism: DgaMorphism,
}

/// `H⁰` comparison across a [`SumIso`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumIsoH0 {
    pub source_dim: usize,
    pub target_dim: usize,
    pub classical_dim: usize,
    pub induced_rank: usize,
    pub source_structure: bool,
    pub target_structure: bool,
}

impl SumIsoH0 {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.classical_dim
            && self.target_dim == self.classical_dim
            && self.induced_rank == self.classical_dim
            && self.source_structure
            && self.target_structure
    }
}

/// Generators `x_c` go to `x_c ⊗ 1` or `1 ⊗ x_c`; cross `y` generators go to 0.
pub fn clifford_sum_iso(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<SumIso> {
    let sum = orthogonal_sum(q1, q2)?;
    let source = derived_clifford(&sum)?;
    let left = derived_clifford(q1)?;
    let right = derived_clifford(q2)?;
    let target = graded_tensor(left.presentation(), right.presentation())?;
    let field = sum.field();
    let c1 = q1.carrier();
    // (side, index in that side)
    let side: Vec<(bool, usize)> = (0..source.rank())
        .map(|a| {
            let (i, k) = source.element(a);
            if k < c1.dim(i) {
                (false, left.global_index(i, k))
            } else {
                (true, right.global_index(i, k - c1.dim(i)))
            }
        })
        .collect();
    let factor = |r: bool| if r { &right } else { &left };
    let names = source.presentation().generators();
    let mut images = BTreeMap::new();
    for (a, &(r, u)) in side.iter().enumerate() {
        let w = tensor_inclusion_word(left.presentation(), r, &[factor(r).x_generator(u)]);
        images.insert(names[source.x_generator(a) as usize].name.clone(), Poly::word(w, field));
        for (b, &(r2, v)) in side.iter().enumerate() {
            let img = if r == r2 {
                let w = tensor_inclusion_word(left.presentation(), r, &[factor(r).y_generator(u, v)]);
                Poly::word(w, field)
            } else {
                Poly::zero()
            };
            images.insert(names[source.y_generator(a, b) as usize].name.clone(), img);
        }
    }
    let morphism = make_morphism(source.presentation(), &target, images)?;
    Ok(SumIso {
        source,
        left,
        right,
        target,
        morphism,
    })
}

impl SumIso {
    /// Induced map on `H⁰(F_{≤w_max})` and the classical structure constants
    /// on both sides. Needs shift 0, connective carriers and `w_max ≥ 2r`.
    pub fn h0(&self, w_max: i32, cap: usize) -> Result<SumIsoH0> {
        let (reps, classical) = h0_data(self.source.form())?;
        if w_max < 2 * classical.rank() as i32 {
            return Err(Error::Precondition(format!(
                "structure constants need w_max ≥ {}",
                2 * classical.rank()
            )));
        }
        let src_tr = Truncation::new(self.source.presentation(), w_max, 0, 0, cap)?;
        let tgt_tr = Truncation::new(&self.target, w_max, 0, 0, cap)?;
        let chain = self.morphism.on_truncations(&src_tr, &tgt_tr)?;
        let hs = src_tr.cohomology_at(0);
        let ht = tgt_tr.cohomology_at(0);
        let induced_rank = rank(&induced_map(&chain, &hs, &ht));
        let gens: Vec<Poly> = reps.iter().map(|v| self.source.x_of(0, v)).collect();
        let src_elems = pbw_elements(self.source.presentation(), &gens);
        let tgt_elems: Vec<Poly> = src_elems.iter().map(|p| self.morphism.apply(p)).collect();
        Ok(SumIsoH0 {
            source_dim: hs.dim(),
            target_dim: ht.dim(),
            classical_dim: classical.dim(),
            induced_rank,
            source_structure: check_structure(&src_tr, &src_elems, &classical)?,
            target_structure: check_structure(&tgt_tr, &tgt_elems, &classical)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Complex;
    use crate::linalg::{Field, Matrix};
    use crate::quadratic::{make_form, pullback};

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_map() {
        let qf = QuadraticForm::gram(q(), Matrix::from_i64(q(), &[&[1, 2], &[2, 0]])).unwrap();
        let id = ChainMap::identity(qf.carrier());
        let m = clifford_map(&id, &qf, &qf, &HomotopyWitness::zero(qf.carrier(), 0)).unwrap();
        assert_eq!(m, DgaMorphism::identity(m.source()));
    }

    #[test]
    fn inclusion_into_rank_two() {
        let q2 = QuadraticForm::gram(q(), Matrix::identity(q(), 2)).unwrap();
        let c1 = Complex::concentrated(q(), 0, 1);
        let incl = ChainMap::new(
            c1.clone(),
            q2.carrier().clone(),
            0,
            BTreeMap::from([(0, Matrix::from_i64(q(), &[&[1], &[0]]))]),
        )
        .unwrap();
        let q1 = pullback(&incl, &q2).unwrap();
        let m = clifford_map(&incl, &q1, &q2, &HomotopyWitness::zero(&c1, 0)).unwrap();
        assert_eq!(m.table()["x"], "x_1");
        assert_eq!(m.table()["y"], "y_1_1");
    }

    #[test]
    fn nonzero_witness_adds_a_constant() {
        // C⁰ = ⟨a, b⟩ → C¹ = ⟨c⟩, d a = c; h(a, c) = 1 gives δh(a, a) = 2
        let c = Complex::two_term(q(), 0, Matrix::from_i64(q(), &[&[1, 0]])).unwrap();
        let q2 = QuadraticForm::zero(&c, 0);
        let q1 = make_form(&c, 0, BTreeMap::from([(0, Matrix::from_i64(q(), &[&[2, 0], &[0, 0]]))])).unwrap();
        let h = HomotopyWitness::new(
            &c,
            0,
            BTreeMap::from([
                (0, Matrix::from_i64(q(), &[&[1], &[0]])),
                (1, Matrix::from_i64(q(), &[&[1, 0]])),
            ]),
        )
        .unwrap();
        let id = ChainMap::identity(&c);
        let m = clifford_map(&id, &q1, &q2, &h).unwrap();
        assert_eq!(m.table()["y_1_3"], "y_1_3 - 2");
        assert!(clifford_map(&id, &q1, &q2, &HomotopyWitness::zero(&c, 0)).is_err());
    }

    #[test]
    fn sum_iso_rank_one_each() {
        let one = QuadraticForm::gram(q(), Matrix::identity(q(), 1)).unwrap();
        let iso = clifford_sum_iso(&one, &one).unwrap();
        let h = iso.h0(4, 20000).unwrap();
        assert!(h.is_iso(), "{h:?}");
        let c = Complex::concentrated(q(), 0, 1);
        let zero = QuadraticForm::zero(&c, 0);
        assert!(clifford_sum_iso(&zero, &zero).is_ok());
    }
}
