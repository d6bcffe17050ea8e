//! Bounded cochain complexes of finite-dimensional based vector spaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, Echelon, Field, Matrix, Scalar, SparseRow};

/// `(−1)^k` as an integer.
pub fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Cochain complex with `d_i : C^i → C^{i+1}` stored as a `dim C^{i+1} × dim C^i` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex {
    field: Field,
    basis: BTreeMap<i32, Vec<String>>,
    d: BTreeMap<i32, Matrix>,
}

impl Complex {
    /// Validated constructor: shapes, unique labels and `d∘d = 0`.
    pub fn new(field: Field, basis: BTreeMap<i32, Vec<String>>, d: BTreeMap<i32, Matrix>) -> Result<Self> {
        let c = Complex::assemble(field, basis, d)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Shape-checked constructor without the `d∘d = 0` check.
    pub(crate) fn assemble(
        field: Field,
        basis: BTreeMap<i32, Vec<String>>,
        d: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        let basis: BTreeMap<i32, Vec<String>> = basis.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let mut seen = BTreeSet::new();
        for label in basis.values().flatten() {
            if !seen.insert(label.as_str()) {
                return Err(Error::Dimension(format!("duplicate basis label {label:?}")));
            }
        }
        let dim = |i: i32| basis.get(&i).map_or(0, Vec::len);
        let mut kept = BTreeMap::new();
        for (i, m) in d {
            field.ensure_same(&m.field())?;
            if m.shape() != (dim(i + 1), dim(i)) {
                return Err(Error::Dimension(format!(
                    "d in degree {i} is {}×{}, expected {}×{}",
                    m.nrows(),
                    m.ncols(),
                    dim(i + 1),
                    dim(i)
                )));
            }
            if !m.is_zero() {
                kept.insert(i, m);
            }
        }
        Ok(Complex { field, basis, d: kept })
    }

    fn check_square_zero(&self) -> Result<()> {
        for (i, m) in &self.d {
            if let Some(next) = self.d.get(&(i + 1)) {
                if !next.mul(m).is_zero() {
                    return Err(Error::NotAComplex { degree: *i });
                }
            }
        }
        Ok(())
    }

    /// Complex with basis labels `1, 2, …` numbered in degree order.
    pub fn from_dims(field: Field, dims: &[(i32, usize)], d: Vec<(i32, Matrix)>) -> Result<Self> {
        let mut sorted: Vec<(i32, usize)> = dims.to_vec();
        sorted.sort();
        let mut basis = BTreeMap::new();
        let mut next = 1usize;
        for (deg, n) in sorted {
            let labels: &mut Vec<String> = basis.entry(deg).or_default();
            for _ in 0..n {
                labels.push(next.to_string());
                next += 1;
            }
        }
        Complex::new(field, basis, d.into_iter().collect())
    }

    pub fn zero(field: Field) -> Self {
        Complex {
            field,
            basis: BTreeMap::new(),
            d: BTreeMap::new(),
        }
    }

    /// `k^dim` placed in a single degree.
    pub fn concentrated(field: Field, degree: i32, dim: usize) -> Self {
        Complex::from_dims(field, &[(degree, dim)], vec![]).expect("no differential")
    }

    /// Two-term complex `C^deg →^m C^{deg+1}`.
    pub fn two_term(field: Field, degree: i32, m: Matrix) -> Result<Self> {
        Complex::from_dims(field, &[(degree, m.ncols()), (degree + 1, m.nrows())], vec![(degree, m)])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, i: i32) -> usize {
        self.basis.get(&i).map_or(0, Vec::len)
    }

    pub fn labels(&self, i: i32) -> &[String] {
        self.basis.get(&i).map_or(&[], Vec::as_slice)
    }

    pub fn basis(&self) -> &BTreeMap<i32, Vec<String>> {
        &self.basis
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        self.basis.keys().copied().collect()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.basis.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.basis.keys().next_back().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn differential(&self, i: i32) -> Matrix {
        self.d
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(i + 1), self.dim(i)))
    }

    /// Nonzero differentials only.
    pub fn differentials(&self) -> &BTreeMap<i32, Matrix> {
        &self.d
    }

    /// `(degree, index)` of every basis element in degree order.
    pub fn elements(&self) -> Vec<(i32, usize)> {
        self.basis
            .iter()
            .flat_map(|(deg, v)| (0..v.len()).map(move |k| (*deg, k)))
            .collect()
    }

    pub fn position(&self, label: &str) -> Option<(i32, usize)> {
        self.basis
            .iter()
            .find_map(|(deg, v)| v.iter().position(|l| l == label).map(|k| (*deg, k)))
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Complex> {
        let basis = self
            .basis
            .iter()
            .map(|(i, v)| (*i, v.iter().map(|l| f(l)).collect()))
            .collect();
        Complex::assemble(self.field, basis, self.d.clone())
    }

    pub fn change_field(&self, field: Field) -> Result<Complex> {
        let d = self
            .d
            .iter()
            .map(|(i, m)| Ok((*i, m.change_field(field)?)))
            .collect::<Result<_>>()?;
        Complex::new(field, self.basis.clone(), d)
    }

    /// Alternating sum of dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .map(|(i, v)| parity_sign(*i as i64) * v.len() as i64)
            .sum()
    }
}

fn disjoint_labels(a: &Complex, b: &Complex) -> (Complex, Complex) {
    let left: BTreeSet<&String> = a.basis.values().flatten().collect();
    let clash = b.basis.values().flatten().any(|l| left.contains(l));
    if clash {
        (
            a.relabel(|l| format!("1:{l}")).expect("prefixing keeps labels distinct"),
            b.relabel(|l| format!("2:{l}")).expect("prefixing keeps labels distinct"),
        )
    } else {
        (a.clone(), b.clone())
    }
}

/// `(C[n])^i = C^{i+n}` with differential `(−1)^n d`.
pub fn shift(c: &Complex, n: i32) -> Complex {
    let basis = c.basis.iter().map(|(i, v)| (i - n, v.clone())).collect();
    let s = c.field.sign(n as i64);
    let d = c.d.iter().map(|(i, m)| (i - n, m.scale(&s))).collect();
    Complex {
        field: c.field,
        basis,
        d,
    }
}

fn dual_label(l: &str) -> String {
    match l.strip_suffix('^') {
        Some(base) => base.to_string(),
        None => format!("{l}^"),
    }
}

/// `(C^∨)^i = (C^{−i})^∨` with `d^∨ φ = −(−1)^{|φ|} φ∘d`.
pub fn dual(c: &Complex) -> Complex {
    let f = c.field;
    let basis = c
        .basis
        .iter()
        .map(|(i, v)| (-i, v.iter().map(|l| dual_label(l)).collect()))
        .collect();
    let d = c
        .d
        .iter()
        .map(|(j, m)| {
            // d_C^j with j = −i−1 gives d^∨_i
            let i = -j - 1;
            (i, m.transpose().scale(&f.neg(&f.sign(i as i64))))
        })
        .collect();
    Complex::assemble(f, basis, d).expect("dual labels stay distinct")
}

/// The canonical isomorphism `C → C^∨∨`, `x ↦ (−1)^{|x|} ev_x`.
pub fn double_dual_iso(c: &Complex) -> ChainMap {
    let target = dual(&dual(c));
    let blocks = c
        .basis
        .iter()
        .map(|(i, v)| (*i, Matrix::identity(c.field, v.len()).scale(&c.field.sign(*i as i64))))
        .collect();
    ChainMap::new(c.clone(), target, 0, blocks).expect("double dual iso")
}

/// Offsets of the `C^i ⊗ D^{m−i}` blocks inside `(C⊗D)^m`.
pub fn tensor_blocks(c: &Complex, d: &Complex, m: i32) -> Vec<(i32, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for (i, v) in &c.basis {
        let dj = d.dim(m - i);
        if dj > 0 {
            out.push((*i, off));
            off += v.len() * dj;
        }
    }
    out
}

/// Position of `c_a ⊗ d_b` with `|c_a| = i`, `|d_b| = j` in `(C⊗D)^{i+j}`.
pub fn tensor_index(c: &Complex, d: &Complex, i: i32, a: usize, j: i32, b: usize) -> usize {
    let off = tensor_blocks(c, d, i + j)
        .into_iter()
        .find(|(k, _)| *k == i)
        .map(|(_, o)| o)
        .expect("tensor block present");
    off + a * d.dim(j) + b
}

fn tensor_degrees(c: &Complex, d: &Complex) -> BTreeSet<i32> {
    let mut out = BTreeSet::new();
    for i in c.basis.keys() {
        for j in d.basis.keys() {
            out.insert(i + j);
        }
    }
    out
}

/// `d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy`. Basis ordered by the degree of the first
/// factor, then by index pairs.
pub fn tensor(c: &Complex, d: &Complex) -> Result<Complex> {
    c.field.ensure_same(&d.field)?;
    let f = c.field;
    let degs = tensor_degrees(c, d);
    let mut basis = BTreeMap::new();
    for &m in &degs {
        let mut labels = Vec::new();
        for (i, _) in tensor_blocks(c, d, m) {
            for a in c.labels(i) {
                for b in d.labels(m - i) {
                    labels.push(format!("{a}⊗{b}"));
                }
            }
        }
        basis.insert(m, labels);
    }
    let mut diffs = BTreeMap::new();
    for &m in &degs {
        let src = tensor_blocks(c, d, m);
        let tgt = tensor_blocks(c, d, m + 1);
        if tgt.is_empty() {
            continue;
        }
        let tgt_off: BTreeMap<i32, usize> = tgt.into_iter().collect();
        let mut entries = Vec::new();
        for (i, off) in src {
            let j = m - i;
            let (ci, dj) = (c.dim(i), d.dim(j));
            // dx ⊗ y
            if let (Some(dc), Some(&to)) = (c.d.get(&i), tgt_off.get(&(i + 1))) {
                for (r, a, x) in dc.entries() {
                    for b in 0..dj {
                        entries.push((to + r * dj + b, off + a * dj + b, x.clone()));
                    }
                }
            }
            // (−1)^i x ⊗ dy
            if let (Some(dd), Some(&to)) = (d.d.get(&j), tgt_off.get(&i)) {
                let s = f.sign(i as i64);
                let dj1 = d.dim(j + 1);
                for a in 0..ci {
                    for (r, b, x) in dd.entries() {
                        entries.push((to + a * dj1 + r, off + a * dj + b, f.mul(&s, x)));
                    }
                }
            }
        }
        let rows: usize = basis.get(&(m + 1)).map_or(0, Vec::len);
        let cols: usize = basis[&m].len();
        diffs.insert(m, Matrix::assemble(f, rows, cols, entries));
    }
    Complex::assemble(f, basis, diffs)
}

/// The Koszul braiding `x⊗y ↦ (−1)^{|x||y|} y⊗x`.
pub fn braiding(c: &Complex, d: &Complex) -> Result<ChainMap> {
    let src = tensor(c, d)?;
    let tgt = tensor(d, c)?;
    let f = c.field;
    let mut blocks = BTreeMap::new();
    for m in src.degrees() {
        let mut entries = Vec::new();
        for (i, off) in tensor_blocks(c, d, m) {
            let j = m - i;
            let s = f.sign(i as i64 * j as i64);
            for a in 0..c.dim(i) {
                for b in 0..d.dim(j) {
                    let to = tensor_index(d, c, j, b, i, a);
                    entries.push((to, off + a * d.dim(j) + b, s.clone()));
                }
            }
        }
        blocks.insert(m, Matrix::assemble(f, tgt.dim(m), src.dim(m), entries));
    }
    ChainMap::new(src, tgt, 0, blocks)
}

pub fn direct_sum(c: &Complex, d: &Complex) -> Result<Complex> {
    c.field.ensure_same(&d.field)?;
    let (c, d) = disjoint_labels(c, d);
    let mut basis: BTreeMap<i32, Vec<String>> = c.basis.clone();
    for (i, v) in &d.basis {
        basis.entry(*i).or_default().extend(v.iter().cloned());
    }
    let degs: BTreeSet<i32> = basis.keys().copied().collect();
    let mut diffs = BTreeMap::new();
    for i in degs {
        diffs.insert(i, c.differential(i).block_diag(&d.differential(i)));
    }
    Complex::assemble(c.field, basis, diffs)
}

/// Which square a [`SquareQuotient`] is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Alternating,
}

/// `Sym²C` or `Λ²C` together with the quotient chain map from `C⊗C`.
#[derive(Clone, Debug)]
pub struct SquareQuotient {
    pub kind: Symmetry,
    pub complex: Complex,
    pub projection: ChainMap,
    /// Basis of each degree as pairs of global element indices `p ≤ q`.
    pub pairs: BTreeMap<i32, Vec<(usize, usize)>>,
}

impl SquareQuotient {
    /// Index of the class of `e_p ⊗ e_q` and the sign relating them, if nonzero.
    pub fn class_of(&self, elements: &[(i32, usize)], p: usize, q: usize) -> Option<(i32, usize, i64)> {
        let (dp, dq) = (elements[p].0 as i64, elements[q].0 as i64);
        let koszul = parity_sign(dp * dq);
        let (lo, hi, sign) = match p.cmp(&q) {
            std::cmp::Ordering::Less => (p, q, 1),
            std::cmp::Ordering::Greater => match self.kind {
                Symmetry::Symmetric => (q, p, koszul),
                Symmetry::Alternating => (q, p, -koszul),
            },
            std::cmp::Ordering::Equal => {
                let survives = match self.kind {
                    Symmetry::Symmetric => dp % 2 == 0,
                    Symmetry::Alternating => dp % 2 != 0,
                };
                if !survives {
                    return None;
                }
                (p, p, 1)
            }
        };
        let m = (dp + dq) as i32;
        let k = self.pairs.get(&m)?.binary_search(&(lo, hi)).ok()?;
        Some((m, k, sign))
    }
}

fn square(c: &Complex, kind: Symmetry) -> SquareQuotient {
    let f = c.field;
    let elems = c.elements();
    let label = |p: usize| &c.basis[&elems[p].0][elems[p].1];
    let mut pairs: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
    for p in 0..elems.len() {
        for q in p..elems.len() {
            let (dp, dq) = (elems[p].0, elems[q].0);
            if p == q {
                let even = dp % 2 == 0;
                let keep = match kind {
                    Symmetry::Symmetric => even,
                    Symmetry::Alternating => !even,
                };
                if !keep {
                    continue;
                }
            }
            pairs.entry(dp + dq).or_default().push((p, q));
        }
    }
    let op = match kind {
        Symmetry::Symmetric => "⊙",
        Symmetry::Alternating => "∧",
    };
    let basis: BTreeMap<i32, Vec<String>> = pairs
        .iter()
        .map(|(m, v)| (*m, v.iter().map(|(p, q)| format!("{}{op}{}", label(*p), label(*q))).collect()))
        .collect();
    let sq = SquareQuotient {
        kind,
        complex: Complex::zero(f),
        projection: ChainMap::zero(&Complex::zero(f), &Complex::zero(f), 0),
        pairs,
    };
    let tc = tensor(c, c).expect("same field");
    // global index of the first element of each degree
    let mut start = BTreeMap::new();
    let mut acc = 0;
    for (i, v) in &c.basis {
        start.insert(*i, acc);
        acc += v.len();
    }
    let mut proj = BTreeMap::new();
    for m in tc.degrees() {
        let rows = basis.get(&m).map_or(0, Vec::len);
        let mut entries = Vec::new();
        for (i, off) in tensor_blocks(c, c, m) {
            let j = m - i;
            for a in 0..c.dim(i) {
                for b in 0..c.dim(j) {
                    let (p, q) = (start[&i] + a, start[&j] + b);
                    if let Some((_, k, s)) = sq.class_of(&elems, p, q) {
                        entries.push((k, off + a * c.dim(j) + b, f.int(s)));
                    }
                }
            }
        }
        proj.insert(m, Matrix::assemble(f, rows, tc.dim(m), entries));
    }
    // d on the quotient: π ∘ d_⊗ ∘ (section p⊙q ↦ p⊗q)
    let mut diffs = BTreeMap::new();
    for (m, v) in &sq.pairs {
        let Some(pi_next) = proj.get(&(m + 1)) else {
            continue;
        };
        let dt = tc.differential(*m);
        let mut sect = Vec::new();
        for (k, (p, q)) in v.iter().enumerate() {
            let (i, a) = elems[*p];
            let (j, b) = elems[*q];
            sect.push((tensor_index(c, c, i, a, j, b), k, f.int(1)));
        }
        let section = Matrix::assemble(f, tc.dim(*m), v.len(), sect);
        diffs.insert(*m, pi_next.mul(&dt.mul(&section)));
    }
    let complex = Complex::assemble(f, basis, diffs).expect("square labels distinct");
    let projection = ChainMap {
        source: tc,
        target: complex.clone(),
        degree: 0,
        blocks: proj,
    };
    SquareQuotient {
        complex,
        projection,
        ..sq
    }
}

/// Coinvariants of `C⊗C` under `a⊗b ↦ (−1)^{|a||b|} b⊗a`.
pub fn sym2(c: &Complex) -> SquareQuotient {
    square(c, Symmetry::Symmetric)
}

/// Coinvariants of `C⊗C` under `a⊗b ↦ −(−1)^{|a||b|} b⊗a`.
pub fn wedge2(c: &Complex) -> SquareQuotient {
    square(c, Symmetry::Alternating)
}

/// `cone(f)^i = C^{i+1} ⊕ D^i`, `d(c, x) = (−dc, f c + dx)`.
pub fn cone(f: &ChainMap) -> Result<Complex> {
    if f.degree != 0 {
        return Err(Error::Precondition("cone needs a degree-0 chain map".into()));
    }
    let field = f.source.field;
    let (c, d) = disjoint_labels(&f.source, &f.target);
    let c1 = shift(&c, 1);
    let mut basis: BTreeMap<i32, Vec<String>> = c1.basis.clone();
    for (i, v) in &d.basis {
        basis.entry(*i).or_default().extend(v.iter().cloned());
    }
    let degs: Vec<i32> = basis.keys().copied().collect();
    let mut diffs = BTreeMap::new();
    for i in degs {
        let rows = [c.dim(i + 2), d.dim(i + 1)];
        let cols = [c.dim(i + 1), d.dim(i)];
        let minus_dc = c.differential(i + 1).neg();
        let fi = f.block(i + 1);
        let dd = d.differential(i);
        diffs.insert(
            i,
            Matrix::from_blocks(field, &rows, &cols, &[(0, 0, &minus_dc), (1, 0, &fi), (1, 1, &dd)]),
        );
    }
    Complex::assemble(field, basis, diffs)
}

/// `cocone(f) = cone(f)[−1]`, so `cocone^i = C^i ⊕ D^{i−1}` and `d(c, x) = (dc, −f c − dx)`.
pub fn cocone(f: &ChainMap) -> Result<Complex> {
    Ok(shift(&cone(f)?, -1))
}

/// Cohomology in one degree: representatives and a reducer giving coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyDegree {
    pub degree: i32,
    ambient: usize,
    representatives: Vec<SparseRow>,
    reducer: Echelon,
}

impl CohomologyDegree {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Representative cocycles, as sparse vectors in `C^degree`.
    pub fn representatives(&self) -> &[SparseRow] {
        &self.representatives
    }

    pub fn dense_representatives(&self) -> Vec<Vec<Scalar>> {
        self.representatives
            .iter()
            .map(|r| {
                let mut v = vec![Scalar::zero(); self.ambient];
                for (j, x) in r {
                    v[*j] = x.clone();
                }
                v
            })
            .collect()
    }

    /// Coordinates of the class of a cocycle in the representative basis;
    /// `None` when `v` is not a cocycle.
    pub fn coordinates(&self, v: SparseRow) -> Option<Vec<Scalar>> {
        let (rem, tag) = self.reducer.reduce_tagged(v);
        if !rem.is_empty() {
            return None;
        }
        let mut out = vec![Scalar::zero(); self.dim()];
        for (k, x) in tag {
            out[k] = x;
        }
        Some(out)
    }

    /// True when `v` is a cocycle with zero class.
    pub fn is_boundary(&self, v: SparseRow) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(Scalar::is_zero))
    }
}

pub(crate) fn dense_to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

/// `H^i(C)` with representatives taken from a kernel basis.
pub fn cohomology_at(c: &Complex, i: i32) -> CohomologyDegree {
    let n = c.dim(i);
    let f = c.field;
    let mut reducer = Echelon::new(f, n);
    if let Some(prev) = c.d.get(&(i - 1)) {
        for col in prev.sparse_columns() {
            reducer.insert(col);
        }
    }
    let boundaries = reducer.rank();
    let mut representatives = Vec::new();
    let kernel = kernel_basis(&c.differential(i));
    for col in kernel.sparse_columns() {
        let k = representatives.len();
        if reducer.insert_tagged(col.clone(), vec![(k, f.int(1))]) {
            representatives.push(col);
        }
    }
    debug_assert_eq!(boundaries + representatives.len(), reducer.rank());
    CohomologyDegree {
        degree: i,
        ambient: n,
        representatives,
        reducer,
    }
}

/// Cohomology in every degree of the support.
pub fn cohomology(c: &Complex) -> BTreeMap<i32, CohomologyDegree> {
    c.degrees().into_iter().map(|i| (i, cohomology_at(c, i))).collect()
}

/// `dim H^i = dim C^i − rank d_i − rank d_{i−1}`, nonzero degrees only.
pub fn cohomology_dims(c: &Complex) -> BTreeMap<i32, usize> {
    let ranks: BTreeMap<i32, usize> = c.d.iter().map(|(i, m)| (*i, rank(m))).collect();
    c.degrees()
        .into_iter()
        .filter_map(|i| {
            let r = ranks.get(&i).copied().unwrap_or(0) + ranks.get(&(i - 1)).copied().unwrap_or(0);
            let h = c.dim(i) - r;
            (h > 0).then_some((i, h))
        })
        .collect()
}

pub fn is_acyclic(c: &Complex) -> bool {
    cohomology_dims(c).is_empty()
}

/// Quasi-isomorphism test via acyclicity of the cone.
pub fn is_quasi_iso(f: &ChainMap) -> Result<bool> {
    Ok(is_acyclic(&cone(f)?))
}

/// Matrix of `H^i(f) : H^i(C) → H^{i+r}(D)` in the representative bases.
pub fn induced_map(f: &ChainMap, hc: &CohomologyDegree, hd: &CohomologyDegree) -> Matrix {
    let field = f.source.field;
    let block = f.block(hc.degree);
    let mut entries = Vec::new();
    for (k, rep) in hc.dense_representatives().iter().enumerate() {
        let image = dense_to_sparse(&block.mul_vec(rep));
        let coords = hd.coordinates(image).expect("chain maps send cocycles to cocycles");
        for (row, x) in coords.into_iter().enumerate() {
            if !x.is_zero() {
                entries.push((row, k, x));
            }
        }
    }
    Matrix::assemble(field, hd.dim(), hc.dim(), entries)
}

/// Independent quasi-isomorphism test: the induced map is invertible in every degree.
pub fn induces_cohomology_iso(f: &ChainMap) -> bool {
    let mut degs: BTreeSet<i32> = f.source.basis.keys().copied().collect();
    degs.extend(f.target.basis.keys().map(|j| j - f.degree));
    degs.into_iter().all(|i| {
        let hc = cohomology_at(&f.source, i);
        let hd = cohomology_at(&f.target, i + f.degree);
        hc.dim() == hd.dim() && rank(&induced_map(f, &hc, &hd)) == hc.dim()
    })
}

/// Map `C^i → D^{i+r}` with `d_D ∘ f = (−1)^r f ∘ d_C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    degree: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, degree: i32, blocks: BTreeMap<i32, Matrix>) -> Result<Self> {
        let m = ChainMap::assemble(source, target, degree, blocks)?;
        m.check_commutes()?;
        Ok(m)
    }

    pub(crate) fn assemble(
        source: Complex,
        target: Complex,
        degree: i32,
        blocks: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        source.field.ensure_same(&target.field)?;
        let mut kept = BTreeMap::new();
        for (i, m) in blocks {
            source.field.ensure_same(&m.field())?;
            let want = (target.dim(i + degree), source.dim(i));
            if m.shape() != want {
                return Err(Error::Dimension(format!(
                    "map block in degree {i} is {}×{}, expected {}×{}",
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
        Ok(ChainMap {
            source,
            target,
            degree,
            blocks: kept,
        })
    }

    fn check_commutes(&self) -> Result<()> {
        let s = self.source.field.sign(self.degree as i64);
        let mut degs: BTreeSet<i32> = self.blocks.keys().copied().collect();
        degs.extend(self.blocks.keys().map(|i| i - 1));
        degs.extend(self.source.d.keys().copied());
        for i in degs {
            let left = self.target.differential(i + self.degree).mul(&self.block(i));
            let right = self.block(i + 1).mul(&self.source.differential(i)).scale(&s);
            if left != right {
                return Err(Error::NotAChainMap { degree: i });
            }
        }
        Ok(())
    }

    pub fn identity(c: &Complex) -> ChainMap {
        let blocks = c.basis.iter().map(|(i, v)| (*i, Matrix::identity(c.field, v.len()))).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            degree: 0,
            blocks,
        }
    }

    pub fn zero(source: &Complex, target: &Complex, degree: i32) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    pub fn block(&self, i: i32) -> Matrix {
        self.blocks.get(&i).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.source.field, self.target.dim(i + self.degree), self.source.dim(i))
        })
    }

    /// Nonzero blocks only.
    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &ChainMap) -> Result<ChainMap> {
        if g.target != self.source {
            return Err(Error::Dimension("composable maps need matching complexes".into()));
        }
        let blocks = g
            .blocks
            .iter()
            .map(|(i, m)| (*i, self.block(i + g.degree).mul(m)))
            .collect();
        ChainMap::assemble(g.source.clone(), self.target.clone(), self.degree + g.degree, blocks)
    }

    fn same_shape(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::Dimension("maps differ in source, target or degree".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.same_shape(other)?;
        let degs: BTreeSet<i32> = self.blocks.keys().chain(other.blocks.keys()).copied().collect();
        let blocks = degs
            .into_iter()
            .map(|i| (i, self.block(i).add(&other.block(i))))
            .collect();
        ChainMap::assemble(self.source.clone(), self.target.clone(), self.degree, blocks)
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        let blocks = self.blocks.iter().map(|(i, m)| (*i, m.scale(c))).collect();
        ChainMap::assemble(self.source.clone(), self.target.clone(), self.degree, blocks).expect("same shape")
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(&self.field().int(-1))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.add(&other.neg())
    }

    /// `f[n] : C[n] → D[n]`, same blocks re-indexed.
    pub fn shift(&self, n: i32) -> ChainMap {
        let blocks = self.blocks.iter().map(|(i, m)| (i - n, m.clone())).collect();
        ChainMap {
            source: shift(&self.source, n),
            target: shift(&self.target, n),
            degree: self.degree,
            blocks,
        }
    }

    /// `f^∨ : D^∨ → C^∨` for a degree-0 map; block `i` is `(f^{−i})^T`.
    pub fn dual(&self) -> Result<ChainMap> {
        if self.degree != 0 {
            return Err(Error::Precondition("dual of a map needs degree 0".into()));
        }
        let blocks = self.blocks.iter().map(|(i, m)| (-i, m.transpose())).collect();
        ChainMap::assemble(dual(&self.target), dual(&self.source), 0, blocks)
    }

    /// `f ⊕ g : C₁⊕C₂ → D₁⊕D₂`.
    pub fn direct_sum(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.degree != g.degree {
            return Err(Error::Dimension("direct sum of maps of different degrees".into()));
        }
        let src = direct_sum(&self.source, &g.source)?;
        let tgt = direct_sum(&self.target, &g.target)?;
        let degs: BTreeSet<i32> = src.basis.keys().copied().collect();
        let blocks = degs
            .into_iter()
            .map(|i| (i, self.block(i).block_diag(&g.block(i))))
            .collect();
        ChainMap::assemble(src, tgt, self.degree, blocks)
    }

    /// `(f, g) : C₁⊕C₂ → D`, `(x, y) ↦ f x + g y`.
    pub fn join(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.target != g.target || self.degree != g.degree {
            return Err(Error::Dimension("joined maps need one target and degree".into()));
        }
        let src = direct_sum(&self.source, &g.source)?;
        let field = self.field();
        let degs: BTreeSet<i32> = src.basis.keys().copied().collect();
        let blocks = degs
            .into_iter()
            .map(|i| {
                let (a, b) = (self.block(i), g.block(i));
                let m = Matrix::from_blocks(
                    field,
                    &[a.nrows()],
                    &[a.ncols(), b.ncols()],
                    &[(0, 0, &a), (0, 1, &b)],
                );
                (i, m)
            })
            .collect();
        ChainMap::assemble(src, self.target.clone(), self.degree, blocks)
    }

    /// `(f; g) : C → D₁⊕D₂`, `x ↦ (f x, g x)`.
    pub fn pair(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.source != g.source || self.degree != g.degree {
            return Err(Error::Dimension("paired maps need one source and degree".into()));
        }
        let tgt = direct_sum(&self.target, &g.target)?;
        let field = self.field();
        let degs: BTreeSet<i32> = self.source.basis.keys().copied().collect();
        let blocks = degs
            .into_iter()
            .map(|i| {
                let (a, b) = (self.block(i), g.block(i));
                let m = Matrix::from_blocks(
                    field,
                    &[a.nrows(), b.nrows()],
                    &[a.ncols()],
                    &[(0, 0, &a), (1, 0, &b)],
                );
                (i, m)
            })
            .collect();
        ChainMap::assemble(self.source.clone(), tgt, self.degree, blocks)
    }

    /// `f ⊗ g` for degree-0 maps.
    pub fn tensor(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.degree != 0 || g.degree != 0 {
            return Err(Error::Precondition("tensor of maps needs degree 0".into()));
        }
        let (c1, d1, c2, d2) = (&self.source, &g.source, &self.target, &g.target);
        let src = tensor(c1, d1)?;
        let tgt = tensor(c2, d2)?;
        let field = self.field();
        let mut blocks = BTreeMap::new();
        for m in src.degrees() {
            let mut entries = Vec::new();
            for (i, off) in tensor_blocks(c1, d1, m) {
                let j = m - i;
                let (fi, gj) = (self.block(i), g.block(j));
                if fi.is_zero() || gj.is_zero() {
                    continue;
                }
                let to = tensor_blocks(c2, d2, m)
                    .into_iter()
                    .find(|(k, _)| *k == i)
                    .map(|(_, o)| o)
                    .expect("image block present");
                let k = fi.kron(&gj);
                for (r, c, x) in k.entries() {
                    entries.push((to + r, off + c, x.clone()));
                }
            }
            blocks.insert(m, Matrix::assemble(field, tgt.dim(m), src.dim(m), entries));
        }
        ChainMap::assemble(src, tgt, 0, blocks)
    }

    pub fn is_quasi_iso(&self) -> Result<bool> {
        is_quasi_iso(self)
    }
}

/// Chain homotopy `h` with `f − g = d h + (−1)^r h d`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    f: ChainMap,
    g: ChainMap,
    blocks: BTreeMap<i32, Matrix>,
}

impl Homotopy {
    pub fn new(f: ChainMap, g: ChainMap, blocks: BTreeMap<i32, Matrix>) -> Result<Self> {
        f.same_shape(&g)?;
        let r = f.degree;
        let h = ChainMap::assemble(f.source.clone(), f.target.clone(), r - 1, blocks)?;
        let s = f.field().sign(r as i64);
        let mut degs: BTreeSet<i32> = f.source.basis.keys().copied().collect();
        degs.extend(f.target.basis.keys().map(|j| j - r));
        for i in degs {
            let lhs = f.block(i).sub(&g.block(i));
            let rhs = f
                .target
                .differential(i + r - 1)
                .mul(&h.block(i))
                .add(&h.block(i + 1).mul(&f.source.differential(i)).scale(&s));
            if lhs != rhs {
                return Err(Error::Witness(format!("homotopy identity fails in degree {i}")));
            }
        }
        Ok(Homotopy { f, g, blocks: h.blocks })
    }

    pub fn ends(&self) -> (&ChainMap, &ChainMap) {
        (&self.f, &self.g)
    }

    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }
}
