//! Shifted graded-symmetric pairings on cochain complexes.

mod constructions;
mod gw;
mod lagrangian;

pub use constructions::{fixture_names, 
    decalage, fixture, hyperbolic, inverse_decalage, transgress, Fixture, OrientedAlgebra,
};
pub use gw::{combine_discriminants, diagonalize, gw_invariants, square_class, GwInvariants};
pub use lagrangian::{fiber_product_form, is_lagrangian, lagrangian_theta};

use std::collections::{BTreeMap, BTreeSet};

use crate::complexes::{cohomology_at, direct_sum, dual, induces_cohomology_iso, shift, sym2, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Field, Matrix, Scalar};

/// Bilinear pairing `L^i × R^{−s−i} → k`, block `i` a `dim L^i × dim R^{−s−i}` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pairing {
    left: Complex,
    right: Complex,
    shift: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl Pairing {
    pub fn new(left: Complex, right: Complex, shift: i32, blocks: BTreeMap<i32, Matrix>) -> Result<Self> {
        left.field().ensure_same(&right.field())?;
        let mut kept = BTreeMap::new();
        for (i, m) in blocks {
            left.field().ensure_same(&m.field())?;
            let want = (left.dim(i), right.dim(-shift - i));
            if m.shape() != want {
                return Err(Error::Dimension(format!(
                    "pairing block {i} is {}×{}, expected {}×{}",
                    m.nrows(),
                    m.ncols(),
                    want.0,
                    want.1
                )));
            }
            if !m.is_zero() {
                kept.insert(i, m);
            }
        }
        Ok(Pairing {
            left,
            right,
            shift,
            blocks: kept,
        })
    }

    pub fn zero(left: &Complex, right: &Complex, shift: i32) -> Self {
        Pairing {
            left: left.clone(),
            right: right.clone(),
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn left(&self) -> &Complex {
        &self.left
    }

    pub fn right(&self) -> &Complex {
        &self.right
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn block(&self, i: i32) -> Matrix {
        self.blocks
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field(), self.left.dim(i), self.right.dim(-self.shift - i)))
    }

    /// Nonzero blocks only.
    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Value on basis elements `e_a ∈ L^i`, `e_b ∈ R^{−s−i}`.
    pub fn value(&self, i: i32, a: usize, b: usize) -> Scalar {
        self.blocks.get(&i).map_or_else(Scalar::zero, |m| m.get(a, b))
    }

    pub fn eval(&self, i: i32, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let f = self.field();
        let by = self.block(i).mul_vec(y);
        x.iter()
            .zip(&by)
            .fold(Scalar::zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    fn degrees(&self) -> BTreeSet<i32> {
        let mut out: BTreeSet<i32> = self.left.degrees().into_iter().collect();
        out.extend(self.right.degrees().into_iter().map(|j| -self.shift - j));
        out
    }

    /// `(δθ)(x, y) = θ(dx, y) + (−1)^{|x|} θ(x, dy)`, a pairing of shift `s+1`.
    pub fn coboundary(&self) -> Pairing {
        let f = self.field();
        let s = self.shift;
        let mut blocks = BTreeMap::new();
        let mut degs = self.degrees();
        degs.extend(self.degrees().into_iter().map(|i| i - 1));
        for i in degs {
            let a = self.left.differential(i).transpose().mul(&self.block(i + 1));
            let b = self
                .block(i)
                .mul(&self.right.differential(-s - 1 - i))
                .scale(&f.sign(i as i64));
            let m = a.add(&b);
            if !m.is_zero() {
                blocks.insert(i, m);
            }
        }
        Pairing {
            left: self.left.clone(),
            right: self.right.clone(),
            shift: s + 1,
            blocks,
        }
    }

    /// Chain condition `θ(dx, y) + (−1)^{|x|} θ(x, dy) = 0`.
    pub fn check_chain(&self) -> Result<()> {
        let cob = self.coboundary();
        if let Some((i, m)) = cob.blocks.iter().next() {
            let (r, c, _) = m.entries().next().expect("nonzero block");
            return Err(Error::ChainCondition {
                left: self.left.labels(*i)[r].clone(),
                right: self.right.labels(-cob.shift - i)[c].clone(),
            });
        }
        Ok(())
    }

    /// `θ^t(y, x) = (−1)^{|x||y|} θ(x, y)` on `R × L`.
    pub fn graded_transpose(&self) -> Pairing {
        let f = self.field();
        let s = self.shift;
        let blocks = self
            .blocks
            .iter()
            .map(|(i, m)| {
                let j = -s - i;
                (j, m.transpose().scale(&f.sign(*i as i64 * j as i64)))
            })
            .collect();
        Pairing {
            left: self.right.clone(),
            right: self.left.clone(),
            shift: s,
            blocks,
        }
    }

    /// `θ^♭ : L → R^∨[s]`, `x ↦ θ(x, −)`.
    pub fn adjoint(&self) -> Result<ChainMap> {
        let target = shift(&dual(&self.right), self.shift);
        let blocks = self.blocks.iter().map(|(i, m)| (*i, m.transpose())).collect();
        ChainMap::new(self.left.clone(), target, 0, blocks)
    }

    fn same_shape(&self, other: &Pairing) -> Result<()> {
        if self.shift != other.shift {
            return Err(Error::ShiftMismatch(self.shift, other.shift));
        }
        if self.left != other.left || self.right != other.right {
            return Err(Error::Dimension("pairings live on different complexes".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Pairing) -> Result<Pairing> {
        self.same_shape(other)?;
        let degs: BTreeSet<i32> = self.blocks.keys().chain(other.blocks.keys()).copied().collect();
        let blocks = degs.into_iter().map(|i| (i, self.block(i).add(&other.block(i)))).collect();
        Pairing::new(self.left.clone(), self.right.clone(), self.shift, blocks)
    }

    pub fn scale(&self, c: &Scalar) -> Pairing {
        let blocks = self.blocks.iter().map(|(i, m)| (*i, m.scale(c))).collect();
        Pairing::new(self.left.clone(), self.right.clone(), self.shift, blocks).expect("same shape")
    }

    pub fn sub(&self, other: &Pairing) -> Result<Pairing> {
        self.add(&other.scale(&self.field().int(-1)))
    }

    /// `(x, y) ↦ θ(f x, g y)` for degree-0 maps into `L` and `R`.
    pub fn pull(&self, f: &ChainMap, g: &ChainMap) -> Result<Pairing> {
        if f.degree() != 0 || g.degree() != 0 {
            return Err(Error::Precondition("pullback needs degree-0 maps".into()));
        }
        if f.target() != &self.left || g.target() != &self.right {
            return Err(Error::Dimension("pullback maps do not land in the paired complexes".into()));
        }
        let s = self.shift;
        let blocks = self
            .blocks
            .iter()
            .map(|(i, m)| (*i, f.block(*i).transpose().mul(m).mul(&g.block(-s - i))))
            .collect();
        Pairing::new(f.source().clone(), g.source().clone(), s, blocks)
    }

    /// Graded symmetry `θ(y, x) = (−1)^{|x||y|} θ(x, y)`; requires `L = R`.
    pub fn check_symmetric(&self) -> Result<()> {
        self.check_symmetry_sign(1)
    }

    /// Graded antisymmetry `θ(y, x) = −(−1)^{|x||y|} θ(x, y)`; requires `L = R`.
    pub fn check_antisymmetric(&self) -> Result<()> {
        self.check_symmetry_sign(-1)
    }

    fn check_symmetry_sign(&self, sign: i64) -> Result<()> {
        if self.left != self.right {
            return Err(Error::Dimension("symmetry needs a pairing of a complex with itself".into()));
        }
        let f = self.field();
        let t = self.graded_transpose().scale(&f.int(sign));
        for i in self.degrees() {
            let (a, b) = (self.block(i), t.block(i));
            if a != b {
                let (r, c) = (0..a.nrows())
                    .flat_map(|r| (0..a.ncols()).map(move |c| (r, c)))
                    .find(|&(r, c)| a.get(r, c) != b.get(r, c))
                    .expect("blocks differ somewhere");
                return Err(Error::Symmetry {
                    left: self.left.labels(i)[r].clone(),
                    right: self.right.labels(-self.shift - i)[c].clone(),
                });
            }
        }
        Ok(())
    }
}

/// `s`-shifted derived quadratic form: a graded-symmetric chain pairing of
/// total degree `−s` on its carrier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticForm {
    pairing: Pairing,
}

/// Validated constructor from `(degree → block)` data.
pub fn make_form(c: &Complex, s: i32, blocks: BTreeMap<i32, Matrix>) -> Result<QuadraticForm> {
    QuadraticForm::from_pairing(Pairing::new(c.clone(), c.clone(), s, blocks)?)
}

impl QuadraticForm {
    pub fn from_pairing(p: Pairing) -> Result<Self> {
        p.check_symmetric()?;
        p.check_chain()?;
        Ok(QuadraticForm { pairing: p })
    }

    pub fn zero(c: &Complex, s: i32) -> Self {
        QuadraticForm {
            pairing: Pairing::zero(c, c, s),
        }
    }

    /// Degree-0 form with Gram matrix `gram` on `k^r`.
    pub fn gram(field: Field, gram: Matrix) -> Result<Self> {
        let c = Complex::concentrated(field, 0, gram.nrows());
        make_form(&c, 0, BTreeMap::from([(0, gram)]))
    }

    pub fn carrier(&self) -> &Complex {
        &self.pairing.left
    }

    pub fn shift(&self) -> i32 {
        self.pairing.shift
    }

    pub fn field(&self) -> Field {
        self.pairing.field()
    }

    pub fn pairing(&self) -> &Pairing {
        &self.pairing
    }

    pub fn block(&self, i: i32) -> Matrix {
        self.pairing.block(i)
    }

    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.pairing.blocks
    }

    pub fn value(&self, i: i32, a: usize, b: usize) -> Scalar {
        self.pairing.value(i, a, b)
    }

    pub fn is_zero(&self) -> bool {
        self.pairing.is_zero()
    }

    pub fn adjoint(&self) -> ChainMap {
        self.pairing.adjoint().expect("forms satisfy the chain condition")
    }

    /// Adjoint is a quasi-isomorphism (cone acyclicity).
    pub fn is_nondegenerate(&self) -> bool {
        self.adjoint().is_quasi_iso().expect("degree-0 adjoint")
    }

    /// Adjoint induces an isomorphism on cohomology, checked degree by degree.
    pub fn is_nondegenerate_by_cohomology(&self) -> bool {
        induces_cohomology_iso(&self.adjoint())
    }

    pub fn scale(&self, c: &Scalar) -> QuadraticForm {
        QuadraticForm {
            pairing: self.pairing.scale(c),
        }
    }

    pub fn neg(&self) -> QuadraticForm {
        self.scale(&self.field().int(-1))
    }

    pub fn add(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        Ok(QuadraticForm {
            pairing: self.pairing.add(&other.pairing)?,
        })
    }

    /// Gram matrix of a form concentrated in degree 0 with shift 0.
    pub fn gram_matrix(&self) -> Result<Matrix> {
        let c = self.carrier();
        if self.shift() != 0 || c.degrees().iter().any(|&i| i != 0) {
            return Err(Error::Precondition("form must be concentrated in degree 0 with shift 0".into()));
        }
        Ok(self.block(0))
    }
}

/// Graded-symmetric pairing of total degree `−s+1`, witnessing `q₁ ~ q₂` when
/// `q₁ − q₂ = δh`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomotopyWitness {
    pairing: Pairing,
}

impl HomotopyWitness {
    /// `form_shift` is the shift `s` of the forms being compared.
    pub fn new(c: &Complex, form_shift: i32, blocks: BTreeMap<i32, Matrix>) -> Result<Self> {
        let p = Pairing::new(c.clone(), c.clone(), form_shift - 1, blocks)?;
        p.check_symmetric()?;
        Ok(HomotopyWitness { pairing: p })
    }

    pub fn zero(c: &Complex, form_shift: i32) -> Self {
        HomotopyWitness {
            pairing: Pairing::zero(c, c, form_shift - 1),
        }
    }

    pub fn carrier(&self) -> &Complex {
        &self.pairing.left
    }

    /// Shift of the forms this witness compares.
    pub fn form_shift(&self) -> i32 {
        self.pairing.shift + 1
    }

    pub fn pairing(&self) -> &Pairing {
        &self.pairing
    }

    pub fn block(&self, i: i32) -> Matrix {
        self.pairing.block(i)
    }

    pub fn value(&self, i: i32, a: usize, b: usize) -> Scalar {
        self.pairing.value(i, a, b)
    }

    pub fn is_zero(&self) -> bool {
        self.pairing.is_zero()
    }

    /// `h(dx, y) + (−1)^{|x|} h(x, dy)`.
    pub fn boundary(&self) -> Pairing {
        self.pairing.coboundary()
    }

    pub fn add(&self, other: &HomotopyWitness) -> Result<HomotopyWitness> {
        Ok(HomotopyWitness {
            pairing: self.pairing.add(&other.pairing)?,
        })
    }

    pub fn pullback(&self, f: &ChainMap) -> Result<HomotopyWitness> {
        Ok(HomotopyWitness {
            pairing: self.pairing.pull(f, f)?,
        })
    }
}

pub fn orthogonal_sum(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<QuadraticForm> {
    if q1.shift() != q2.shift() {
        return Err(Error::ShiftMismatch(q1.shift(), q2.shift()));
    }
    q1.field().ensure_same(&q2.field())?;
    let c = direct_sum(q1.carrier(), q2.carrier())?;
    let s = q1.shift();
    let degs: BTreeSet<i32> = c.degrees().into_iter().collect();
    let blocks = degs
        .into_iter()
        .map(|i| (i, q1.block(i).block_diag(&q2.block(i))))
        .collect();
    make_form(&c, s, blocks)
}

/// `(f*q)(x, y) = q(f x, f y)`.
pub fn pullback(f: &ChainMap, q: &QuadraticForm) -> Result<QuadraticForm> {
    QuadraticForm::from_pairing(q.pairing.pull(f, f)?)
}

/// Dimension of the space of `s`-shifted forms up to homotopy, `dim H^{−s}(Sym²C)`.
pub fn qf_space_dim(c: &Complex, s: i32) -> usize {
    cohomology_at(&sym2(c).complex, -s).dim()
}

/// Whether `h` witnesses `q₁ ~ f*q₂`.
pub fn check_isometry_witness(
    f: &ChainMap,
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    h: &HomotopyWitness,
) -> Result<bool> {
    if q1.shift() != q2.shift() {
        return Err(Error::ShiftMismatch(q1.shift(), q2.shift()));
    }
    if h.form_shift() != q1.shift() {
        return Err(Error::ShiftMismatch(h.form_shift(), q1.shift()));
    }
    if f.source() != q1.carrier() || f.target() != q2.carrier() || h.carrier() != q1.carrier() {
        return Err(Error::Dimension("witness data live on mismatched complexes".into()));
    }
    let diff = q1.pairing.sub(&pullback(f, q2)?.pairing)?;
    Ok(diff == h.boundary())
}

/// Form whose value on `x⊗y` is `φ(π(x⊗y))` for a functional `φ` on
/// `(Sym²C)^{−s}`; `φ` must vanish on boundaries.
pub fn form_from_sym2_functional(c: &Complex, s: i32, phi: &[Scalar]) -> Result<QuadraticForm> {
    let sq = sym2(c);
    let m = -s;
    if phi.len() != sq.complex.dim(m) {
        return Err(Error::Dimension("functional length differs from dim Sym²".into()));
    }
    let field = c.field();
    let row = Matrix::from_rows_shaped(field, 1, phi.len(), vec![phi.to_vec()])?;
    let on_tensor = row.mul(&sq.projection.block(m));
    let mut blocks = BTreeMap::new();
    for (i, off) in crate::complexes::tensor_blocks(c, c, m) {
        let j = m - i;
        let (di, dj) = (c.dim(i), c.dim(j));
        let mut entries = Vec::new();
        for a in 0..di {
            for b in 0..dj {
                let x = on_tensor.get(0, off + a * dj + b);
                if !x.is_zero() {
                    entries.push((a, b, x));
                }
            }
        }
        blocks.insert(i, Matrix::assemble(field, di, dj, entries));
    }
    make_form(c, s, blocks)
}

/// Basis of functionals on `(Sym²C)^{−s}` that kill boundaries, as rows.
pub fn sym2_cocycle_functionals(c: &Complex, s: i32) -> Matrix {
    let sq = sym2(c);
    let d = sq.complex.differential(-s - 1);
    kernel_basis(&d.transpose()).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Complex;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn make_form_examples() {
        let c = Complex::concentrated(q(), 0, 2);
        assert!(make_form(&c, 0, BTreeMap::from([(0, Matrix::identity(q(), 2))])).is_ok());
        let bad = make_form(&c, 0, BTreeMap::from([(0, Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]))]));
        assert!(matches!(bad, Err(Error::Symmetry { .. })));
        // [a → b], a in degree −1, b in degree 0, q(a,b) = 1 with s = 1
        let ab = Complex::two_term(q(), -1, Matrix::identity(q(), 1)).unwrap();
        let form = make_form(
            &ab,
            1,
            BTreeMap::from([(-1, Matrix::identity(q(), 1)), (0, Matrix::identity(q(), 1))]),
        )
        .unwrap();
        assert!(form.is_nondegenerate());
    }

    #[test]
    fn chain_condition_error_names_pair() {
        let ab = Complex::two_term(q(), -1, Matrix::identity(q(), 1)).unwrap();
        let bad = make_form(&ab, 0, BTreeMap::from([(0, Matrix::identity(q(), 1))]));
        assert!(matches!(bad, Err(Error::ChainCondition { .. })));
    }

    #[test]
    fn nondegeneracy_examples() {
        let d10 = QuadraticForm::gram(q(), Matrix::from_i64(q(), &[&[1, 0], &[0, 0]])).unwrap();
        assert!(!d10.is_nondegenerate());
        let id = QuadraticForm::gram(q(), Matrix::identity(q(), 2)).unwrap();
        assert!(id.is_nondegenerate());
        assert!(QuadraticForm::zero(id.carrier(), 0).adjoint().is_zero());
    }

    #[test]
    fn sums_and_pullbacks() {
        let one = QuadraticForm::gram(q(), Matrix::identity(q(), 1)).unwrap();
        let s = orthogonal_sum(&one, &one).unwrap();
        assert_eq!(s.block(0), Matrix::identity(q(), 2));
        let z = QuadraticForm::zero(one.carrier(), 0);
        assert!(!orthogonal_sum(&one, &z).unwrap().is_nondegenerate());
        let id = ChainMap::identity(s.carrier());
        assert_eq!(pullback(&id, &s).unwrap(), s);
        let zero = ChainMap::zero(s.carrier(), s.carrier(), 0);
        assert!(pullback(&zero, &s).unwrap().is_zero());
        let shifted = make_form(one.carrier(), 1, BTreeMap::new()).unwrap();
        assert_eq!(orthogonal_sum(&one, &shifted).unwrap_err(), Error::ShiftMismatch(0, 1));
    }

    #[test]
    fn qf_dims() {
        assert_eq!(qf_space_dim(&Complex::concentrated(q(), 0, 1), 0), 1);
        let odd = Complex::concentrated(q(), -1, 1);
        for s in -4..=4 {
            assert_eq!(qf_space_dim(&odd, s), 0);
        }
        let c = Complex::concentrated(q(), -2, 1);
        for s in -6..=6 {
            assert_eq!(qf_space_dim(&c, s), usize::from(s == 4));
        }
    }

    #[test]
    fn witness_examples() {
        let one = QuadraticForm::gram(q(), Matrix::identity(q(), 1)).unwrap();
        let c = one.carrier().clone();
        let id = ChainMap::identity(&c);
        let h0 = HomotopyWitness::zero(&c, 0);
        assert!(check_isometry_witness(&id, &one, &one, &h0).unwrap());
        let z = QuadraticForm::zero(&c, 0);
        assert!(!check_isometry_witness(&id, &z, &one, &h0).unwrap());
    }
}
