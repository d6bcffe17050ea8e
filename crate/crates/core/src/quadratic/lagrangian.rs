use std::collections::BTreeMap;

use super::{check_isometry_witness, make_form, HomotopyWitness, Pairing, QuadraticForm};
use crate::complexes::{cocone, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

fn ensure_null(f: &ChainMap, q: &QuadraticForm, gamma: &HomotopyWitness) -> Result<()> {
    let zero = QuadraticForm::zero(f.source(), q.shift());
    if !check_isometry_witness(f, &zero, q, gamma)? {
        return Err(Error::Witness("γ is not a null structure: 0 − f*q ≠ δγ".into()));
    }
    Ok(())
}

/// `θ((p, c) ⊗ p′) = q(c, f p′) − γ(p, p′)` on `cocone(f) × P`, shift `s − 1`.
pub fn lagrangian_theta(f: &ChainMap, q: &QuadraticForm, gamma: &HomotopyWitness) -> Result<Pairing> {
    ensure_null(f, q, gamma)?;
    let field = q.field();
    let p = f.source();
    let c = f.target();
    let k = cocone(f)?;
    let s = q.shift();
    let mut blocks = BTreeMap::new();
    for i in k.degrees() {
        let j = -(s - 1) - i;
        if p.dim(j) == 0 {
            continue;
        }
        let top = gamma.block(i).neg();
        let bottom = q.block(i - 1).mul(&f.block(j));
        let m = Matrix::from_blocks(
            field,
            &[p.dim(i), c.dim(i - 1)],
            &[p.dim(j)],
            &[(0, 0, &top), (1, 0, &bottom)],
        );
        blocks.insert(i, m);
    }
    let theta = Pairing::new(k, p.clone(), s - 1, blocks)?;
    theta.check_chain()?;
    Ok(theta)
}

/// Whether `θ^♭ : cocone(f) → P^∨[s−1]` is a quasi-isomorphism.
pub fn is_lagrangian(f: &ChainMap, q: &QuadraticForm, gamma: &HomotopyWitness) -> Result<bool> {
    lagrangian_theta(f, q, gamma)?.adjoint()?.is_quasi_iso()
}

/// Shift-`(s−1)` form on `Z = cocone((f₁, −f₂))`, `Z^i = P₁^i ⊕ P₂^i ⊕ C^{i−1}`:
///
/// `Q(z, z′) = γ₁(p₁, p₁′) − γ₂(p₂, p₂′) − ½ q(c, g′) − ½ (−1)^{|z|} q(g, c′)`
/// with `g = f₁p₁ + f₂p₂`.
pub fn fiber_product_form(
    q: &QuadraticForm,
    f1: &ChainMap,
    g1: &HomotopyWitness,
    f2: &ChainMap,
    g2: &HomotopyWitness,
) -> Result<QuadraticForm> {
    ensure_null(f1, q, g1)?;
    ensure_null(f2, q, g2)?;
    let field = q.field();
    let s = q.shift();
    let joined = f1.join(&f2.neg())?;
    let z = cocone(&joined)?;
    let (p1, p2, c) = (f1.source(), f2.source(), q.carrier());
    let half = field
        .inv(&field.int(-2))
        .ok_or(Error::Characteristic(field.characteristic()))?;
    let mut blocks = BTreeMap::new();
    for i in z.degrees() {
        let j = -(s - 1) - i;
        if z.dim(j) == 0 {
            continue;
        }
        let rows = [p1.dim(i), p2.dim(i), c.dim(i - 1)];
        let cols = [p1.dim(j), p2.dim(j), c.dim(j - 1)];
        let a11 = g1.block(i);
        let a22 = g2.block(i).neg();
        let qc = q.block(i - 1);
        let a31 = qc.mul(&f1.block(j)).scale(&half);
        let a32 = qc.mul(&f2.block(j)).scale(&half);
        let sg = field.mul(&half, &field.sign(i as i64));
        let qi = q.block(i);
        let a13 = f1.block(i).transpose().mul(&qi).scale(&sg);
        let a23 = f2.block(i).transpose().mul(&qi).scale(&sg);
        let m = Matrix::from_blocks(
            field,
            &rows,
            &cols,
            &[
                (0, 0, &a11),
                (1, 1, &a22),
                (2, 0, &a31),
                (2, 1, &a32),
                (0, 2, &a13),
                (1, 2, &a23),
            ],
        );
        blocks.insert(i, m);
    }
    make_form(&z, s - 1, blocks)
}
