use std::collections::{BTreeMap, BTreeSet};

use super::{make_form, Pairing, QuadraticForm};
use crate::complexes::{direct_sum, dual, parity_sign, shift, tensor, tensor_index, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// `hyp(C; n, m)`: `C[n] ⊕ C^∨[m]` with the evaluation pairing, shift `n+m`.
///
/// For `x ∈ C^i` and its dual `φ`, `q(x̄, φ̄) = (−1)^{(m+1) i} φ(x)`; the
/// `(φ̄, x̄)` entries follow from graded symmetry.
pub fn hyperbolic(c: &Complex, n: i32, m: i32) -> Result<QuadraticForm> {
    let field = c.field();
    let left = shift(c, n);
    let right = shift(&dual(c), m);
    let carrier = direct_sum(&left, &right)?;
    let s = n + m;
    let mut entries: BTreeMap<i32, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
    for (&i, labels) in c.basis() {
        let a = i - n;
        let b = -i - m;
        let eps = parity_sign(((m + 1) * i) as i64);
        let sym = parity_sign(a as i64 * b as i64);
        let offset_b = left.dim(b);
        for k in 0..labels.len() {
            entries
                .entry(a)
                .or_default()
                .push((k, offset_b + k, field.int(eps)));
            entries
                .entry(b)
                .or_default()
                .push((offset_b + k, k, field.int(eps * sym)));
        }
    }
    let blocks = entries
        .into_iter()
        .map(|(a, e)| (a, Matrix::assemble(field, carrier.dim(a), carrier.dim(-s - a), e)))
        .collect();
    make_form(&carrier, s, blocks)
}

fn check_eps(eps: i32) -> Result<()> {
    if eps == 1 || eps == -1 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("décalage direction must be ±1, got {eps}")))
    }
}

/// Quadratic form on `C[ε]` from a graded-antisymmetric chain pairing `ω` of
/// shift `s` on `C`: `q(x̄, ȳ) = (−1)^{|x|} ω(x, y)`, shift `s + 2ε`.
pub fn decalage(omega: &Pairing, eps: i32) -> Result<QuadraticForm> {
    check_eps(eps)?;
    omega.check_antisymmetric()?;
    omega.check_chain()?;
    let field = omega.field();
    let carrier = shift(omega.left(), eps);
    let blocks = omega
        .blocks()
        .iter()
        .map(|(i, m)| (i - eps, m.scale(&field.sign(*i as i64))))
        .collect();
    make_form(&carrier, omega.shift() + 2 * eps, blocks)
}

/// Inverse of [`decalage`]: recovers `ω` on `C` from `q` on `C[ε]`.
pub fn inverse_decalage(q: &QuadraticForm, eps: i32) -> Result<Pairing> {
    check_eps(eps)?;
    let field = q.field();
    let c = shift(q.carrier(), -eps);
    let blocks = q
        .blocks()
        .iter()
        .map(|(a, m)| {
            let i = a + eps;
            (i, m.scale(&field.sign(i as i64)))
        })
        .collect();
    let omega = Pairing::new(c.clone(), c, q.shift() - 2 * eps, blocks)?;
    omega.check_antisymmetric()?;
    omega.check_chain()?;
    Ok(omega)
}

type ProductKey = (i32, usize, i32, usize);

/// Finite-dimensional graded-commutative dg algebra with a functional `η`
/// on its degree-`d` part.
#[derive(Clone, Debug)]
pub struct OrientedAlgebra {
    underlying: Complex,
    unit: Vec<Scalar>,
    products: BTreeMap<ProductKey, Vec<Scalar>>,
    orientation: Vec<Scalar>,
    degree: i32,
}

impl OrientedAlgebra {
    /// `products[(i, a, j, b)]` is `e_a e_b` as a dense vector in degree `i+j`;
    /// missing keys are zero products.
    pub fn new(
        underlying: Complex,
        unit: Vec<Scalar>,
        products: BTreeMap<ProductKey, Vec<Scalar>>,
        orientation: Vec<Scalar>,
        degree: i32,
    ) -> Result<Self> {
        let bad = |m: &str| Err(Error::Precondition(format!("oriented algebra: {m}")));
        if unit.len() != underlying.dim(0) {
            return bad("unit must live in degree 0");
        }
        if orientation.len() != underlying.dim(degree) {
            return bad("orientation length differs from the top-degree dimension");
        }
        for ((i, a, j, b), v) in &products {
            if *a >= underlying.dim(*i) || *b >= underlying.dim(*j) || v.len() != underlying.dim(i + j) {
                return bad("product entry out of shape");
            }
        }
        let alg = OrientedAlgebra {
            underlying,
            unit,
            products,
            orientation,
            degree,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let f = self.field();
        let c = &self.underlying;
        let elems = c.elements();
        let basis_vec = |i: i32, a: usize| {
            let mut v = vec![Scalar::zero(); c.dim(i)];
            v[a] = f.int(1);
            v
        };
        let fail = |m: String| Err(Error::Precondition(format!("oriented algebra: {m}")));
        for &(i, a) in &elems {
            let e = basis_vec(i, a);
            if self.mul(0, &self.unit, i, &e) != e || self.mul(i, &e, 0, &self.unit) != e {
                return fail(format!("unit law fails on {}", c.labels(i)[a]));
            }
        }
        for &(i, a) in &elems {
            for &(j, b) in &elems {
                let (x, y) = (basis_vec(i, a), basis_vec(j, b));
                let xy = self.mul(i, &x, j, &y);
                let yx = self.mul(j, &y, i, &x);
                let s = f.sign(i as i64 * j as i64);
                if xy.iter().zip(&yx).any(|(p, q)| *p != f.mul(&s, q)) {
                    return fail(format!("not graded-commutative on ({}, {})", c.labels(i)[a], c.labels(j)[b]));
                }
                // Leibniz
                let lhs = c.differential(i + j).mul_vec(&xy);
                let dx = c.differential(i).mul_vec(&x);
                let dy = c.differential(j).mul_vec(&y);
                let r1 = self.mul(i + 1, &dx, j, &y);
                let r2 = self.mul(i, &x, j + 1, &dy);
                let si = f.sign(i as i64);
                let rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(p, q)| f.add(p, &f.mul(&si, q))).collect();
                if lhs != rhs {
                    return fail(format!("Leibniz rule fails on ({}, {})", c.labels(i)[a], c.labels(j)[b]));
                }
                for &(k, e) in &elems {
                    let z = basis_vec(k, e);
                    let l = self.mul(i + j, &xy, k, &z);
                    let r = self.mul(i, &x, j + k, &self.mul(j, &y, k, &z));
                    if l != r {
                        return fail("not associative".into());
                    }
                }
            }
        }
        let d = c.differential(self.degree - 1);
        let eta = Matrix::from_rows_shaped(f, 1, self.orientation.len(), vec![self.orientation.clone()])?;
        if !eta.mul(&d).is_zero() {
            return fail("η∘d ≠ 0".into());
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.underlying.field()
    }

    pub fn underlying(&self) -> &Complex {
        &self.underlying
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn orientation(&self) -> &[Scalar] {
        &self.orientation
    }

    /// Product of `x ∈ B^i` and `y ∈ B^j`.
    pub fn mul(&self, i: i32, x: &[Scalar], j: i32, y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![Scalar::zero(); self.underlying.dim(i + j)];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                if let Some(v) = self.products.get(&(i, a, j, b)) {
                    let c = f.mul(xa, yb);
                    for (o, t) in out.iter_mut().zip(v) {
                        *o = f.add(o, &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    /// `η(e_a e_b)` for `e_a ∈ B^i`, `e_b ∈ B^{d−i}`.
    pub fn trace_pairing(&self, i: i32, a: usize, b: usize) -> Scalar {
        let f = self.field();
        match self.products.get(&(i, a, self.degree - i, b)) {
            Some(v) => v
                .iter()
                .zip(&self.orientation)
                .fold(Scalar::zero(), |acc, (p, q)| f.add(&acc, &f.mul(p, q))),
            None => Scalar::zero(),
        }
    }

    /// The pairing `(b, b′) ↦ η(b b′)`, of shift `−d`.
    pub fn orientation_pairing(&self) -> Pairing {
        let c = &self.underlying;
        let blocks = c
            .degrees()
            .into_iter()
            .map(|i| {
                let j = self.degree - i;
                let entries = (0..c.dim(i))
                    .flat_map(|a| (0..c.dim(j)).map(move |b| (a, b)))
                    .map(|(a, b)| (a, b, self.trace_pairing(i, a, b)))
                    .collect::<Vec<_>>();
                (i, Matrix::assemble(self.field(), c.dim(i), c.dim(j), entries))
            })
            .collect();
        Pairing::new(c.clone(), c.clone(), -self.degree, blocks).expect("shapes match")
    }

    /// True when `η(b b′)` is a nondegenerate pairing up to homotopy.
    pub fn is_orientation(&self) -> bool {
        self.orientation_pairing()
            .adjoint()
            .and_then(|a| a.is_quasi_iso())
            .unwrap_or(false)
    }

    /// The ground field with `η = id`.
    pub fn point(field: Field) -> Self {
        let c = Complex::concentrated(field, 0, 1);
        let one = vec![field.int(1)];
        OrientedAlgebra::new(c, one.clone(), BTreeMap::from([((0, 0, 0, 0), one.clone())]), one, 0)
            .expect("point algebra")
    }

    /// Cohomology of the `d`-sphere: `1` in degree 0, `t` in degree `d`, `t² = 0`, `η(t) = 1`.
    pub fn sphere(field: Field, d: i32) -> Result<Self> {
        if d < 1 {
            return Err(Error::Precondition("sphere dimension must be at least 1".into()));
        }
        let mut basis = BTreeMap::new();
        basis.insert(0, vec!["1".to_string()]);
        basis.insert(d, vec!["t".to_string()]);
        let c = Complex::new(field, basis, BTreeMap::new())?;
        let one = vec![field.int(1)];
        let products = BTreeMap::from([
            ((0, 0, 0, 0), one.clone()),
            ((0, 0, d, 0), one.clone()),
            ((d, 0, 0, 0), one.clone()),
        ]);
        OrientedAlgebra::new(c, one.clone(), products, one, d)
    }

    pub fn circle(field: Field) -> Self {
        OrientedAlgebra::sphere(field, 1).expect("circle algebra")
    }
}

/// Form on `C ⊗ B` of shift `s − d`:
/// `q′(c⊗x, c′⊗x′) = (−1)^{|x||c′|} q(c, c′) η(x x′)`.
pub fn transgress(q: &QuadraticForm, b: &OrientedAlgebra) -> Result<QuadraticForm> {
    q.field().ensure_same(&b.field())?;
    let c = q.carrier();
    let alg = b.underlying();
    let t = tensor(c, alg)?;
    let field = q.field();
    let s = q.shift();
    let d = b.degree();
    let s_out = s - d;
    let mut entries: BTreeMap<i32, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
    for (i, block) in q.blocks() {
        let i2 = -s - i;
        for (a, a2, qv) in block.entries() {
            for k in alg.degrees() {
                let k2 = d - k;
                if alg.dim(k2) == 0 {
                    continue;
                }
                let sign = field.sign(k as i64 * i2 as i64);
                for u in 0..alg.dim(k) {
                    for u2 in 0..alg.dim(k2) {
                        let eta = b.trace_pairing(k, u, u2);
                        if eta.is_zero() {
                            continue;
                        }
                        let row = tensor_index(c, alg, *i, a, k, u);
                        let col = tensor_index(c, alg, i2, a2, k2, u2);
                        let v = field.mul(&sign, &field.mul(qv, &eta));
                        entries.entry(i + k).or_default().push((row, col, v));
                    }
                }
            }
        }
    }
    let blocks = entries
        .into_iter()
        .map(|(m, e)| (m, Matrix::assemble(field, t.dim(m), t.dim(-s_out - m), e)))
        .collect();
    make_form(&t, s_out, blocks)
}

/// A named fixture form.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub form: QuadraticForm,
}

fn int_param(params: &[Scalar], k: usize, what: &str) -> Result<i64> {
    params
        .get(k)
        .and_then(Scalar::to_i64)
        .ok_or_else(|| Error::Precondition(format!("{what} must be an integer")))
}

/// Builders: `poincare_sphere d`, `trace_gl n`, `hyperbolic r`, `diagonal a₁ … a_r`.
pub fn fixture(field: Field, name: &str, params: &[Scalar]) -> Result<Fixture> {
    let form = match name {
        "poincare_sphere" => {
            let d = int_param(params, 0, "sphere dimension")?;
            if d < 1 {
                return Err(Error::Precondition("poincare_sphere needs d ≥ 1".into()));
            }
            let d = d as i32;
            let mut basis = BTreeMap::new();
            basis.insert(-d, vec!["t".to_string()]);
            basis.insert(0, vec!["1".to_string()]);
            let c = Complex::new(field, basis, BTreeMap::new())?;
            let one = Matrix::identity(field, 1);
            make_form(&c, d, BTreeMap::from([(0, one.clone()), (-d, one)]))?
        }
        "trace_gl" => {
            let n = int_param(params, 0, "matrix size")?;
            if !(1..=12).contains(&n) {
                return Err(Error::Precondition("trace_gl needs 1 ≤ n ≤ 12".into()));
            }
            let n = n as usize;
            let labels: Vec<String> = (0..n * n)
                .map(|k| {
                    let (i, j) = (k / n + 1, k % n + 1);
                    if n < 10 {
                        format!("E{i}{j}")
                    } else {
                        format!("E{i}_{j}")
                    }
                })
                .collect();
            let c = Complex::new(field, BTreeMap::from([(0, labels)]), BTreeMap::new())?;
            // tr(E_ij E_kl) = δ_jk δ_il
            let entries = (0..n * n).map(|k| {
                let (i, j) = (k / n, k % n);
                (k, j * n + i, field.int(1))
            });
            make_form(&c, 0, BTreeMap::from([(0, Matrix::assemble(field, n * n, n * n, entries))]))?
        }
        "hyperbolic" => {
            let r = int_param(params, 0, "rank")?;
            if r < 0 {
                return Err(Error::Precondition("hyperbolic needs r ≥ 0".into()));
            }
            hyperbolic(&Complex::concentrated(field, 0, r as usize), 0, 0)?
        }
        "diagonal" => {
            let r = params.len();
            let entries = params
                .iter()
                .enumerate()
                .map(|(k, x)| Ok((k, k, field.element(x)?)))
                .collect::<Result<Vec<_>>>()?;
            QuadraticForm::gram(field, Matrix::assemble(field, r, r, entries))?
        }
        other => return Err(Error::Precondition(format!("unknown fixture {other:?}"))),
    };
    Ok(Fixture {
        name: name.to_string(),
        form,
    })
}

/// Names accepted by [`fixture`].
pub fn fixture_names() -> BTreeSet<&'static str> {
    BTreeSet::from(["poincare_sphere", "trace_gl", "hyperbolic", "diagonal"])
}
