use std::collections::BTreeMap;

use super::matrix::{Matrix, SparseRow};
use super::scalar::{Field, Scalar};

type Work = BTreeMap<usize, Scalar>;

fn sub_scaled(field: Field, target: &mut Work, c: &Scalar, row: &[(usize, Scalar)]) {
    for (j, x) in row {
        let slot = target.entry(*j).or_insert_with(Scalar::zero);
        *slot = field.axpy_neg(slot, c, x);
        if slot.is_zero() {
            target.remove(j);
        }
    }
}

fn normalized(field: Field, row: Work, lead: usize) -> SparseRow {
    let inv = field.inv(&row[&lead]).expect("nonzero pivot");
    row.into_iter().map(|(j, x)| (j, field.mul(&x, &inv))).collect()
}

/// Reduced row-echelon form and the strictly increasing pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let field = m.field();
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for row in m.rows() {
        let mut work: Work = row.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let Some((&c, x)) = work.range(cursor..).next() else {
                break;
            };
            match pivots.get(&c) {
                Some(p) => {
                    let x = x.clone();
                    sub_scaled(field, &mut work, &x, p);
                }
                None => {
                    let lead = c;
                    pivots.insert(lead, normalized(field, std::mem::take(&mut work), lead));
                    break;
                }
            }
            cursor = c;
        }
    }
    // back substitution, highest pivot first
    let cols: Vec<usize> = pivots.keys().copied().collect();
    for (k, &p) in cols.iter().enumerate().rev() {
        let prow = pivots[&p].clone();
        for &q in &cols[..k] {
            let row = pivots.get_mut(&q).unwrap();
            if let Ok(pos) = row.binary_search_by_key(&p, |(j, _)| *j) {
                let c = row[pos].1.clone();
                let mut work: Work = std::mem::take(row).into_iter().collect();
                sub_scaled(field, &mut work, &c, &prow);
                *row = work.into_iter().collect();
            }
        }
    }
    let mut rows: Vec<SparseRow> = pivots.into_values().collect();
    rows.resize(m.nrows(), Vec::new());
    (Matrix::from_sparse_rows(field, m.ncols(), rows), cols)
}

pub fn rank(m: &Matrix) -> usize {
    let mut e = Echelon::new(m.field(), m.ncols());
    for row in m.rows() {
        e.insert(row.clone());
    }
    e.rank()
}

/// Columns form a basis of the null space of `m`.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let field = m.field();
    let n = m.ncols();
    if m.is_zero() {
        return Matrix::identity(field, n);
    }
    let (r, pivots) = rref(m);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let free: Vec<usize> = (0..n).filter(|j| !is_pivot[*j]).collect();
    let mut entries = Vec::new();
    for (k, &fcol) in free.iter().enumerate() {
        entries.push((fcol, k, field.int(1)));
        for (row, &p) in pivots.iter().enumerate() {
            let x = r.get(row, fcol);
            if !x.is_zero() {
                entries.push((p, k, field.neg(&x)));
            }
        }
    }
    Matrix::assemble(field, n, free.len(), entries)
}

/// Some `x` with `m·x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.nrows(), "right-hand side length");
    let field = m.field();
    let n = m.ncols();
    let mut entries: Vec<(usize, usize, Scalar)> =
        m.entries().map(|(i, j, x)| (i, j, x.clone())).collect();
    for (i, x) in b.iter().enumerate() {
        entries.push((i, n, field.element(x).ok()?));
    }
    let aug = Matrix::assemble(field, m.nrows(), n + 1, entries);
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, n);
    }
    Some(x)
}

#[derive(Clone, Debug)]
struct PivotRow {
    row: SparseRow,
    tag: SparseRow,
}

/// Incremental echelon basis of a row space. Pivots sit on the largest
/// column of each row. Rows may carry a tag vector so that reducing a vector
/// also reports its coordinates along the tagged rows, which is how
/// cohomology classes get expressed in a chosen basis of representatives.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    pivots: BTreeMap<usize, PivotRow>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `v` against the basis. Returns the remainder and the
    /// accumulated tag coefficients (`v = remainder + Σ rows·coef`).
    pub fn reduce_tagged(&self, v: SparseRow) -> (Work, Work) {
        let field = self.field;
        let mut work: Work = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        let mut tag: Work = BTreeMap::new();
        let mut cursor = usize::MAX;
        loop {
            let Some((&c, x)) = work.range(..=cursor).next_back() else {
                break;
            };
            if let Some(p) = self.pivots.get(&c) {
                let x = x.clone();
                sub_scaled(field, &mut work, &x, &p.row);
                for (j, t) in &p.tag {
                    let slot = tag.entry(*j).or_insert_with(Scalar::zero);
                    *slot = field.add(slot, &field.mul(&x, t));
                    if slot.is_zero() {
                        tag.remove(j);
                    }
                }
            }
            if c == 0 {
                break;
            }
            cursor = c - 1;
        }
        (work, tag)
    }

    pub fn reduce(&self, v: SparseRow) -> SparseRow {
        self.reduce_tagged(v).0.into_iter().collect()
    }

    pub fn contains(&self, v: SparseRow) -> bool {
        self.reduce_tagged(v).0.is_empty()
    }

    /// Adds a row; returns false when it was already in the span.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        self.insert_tagged(v, Vec::new())
    }

    /// Adds a row carrying `tag`; returns false when it was already in the span.
    pub fn insert_tagged(&mut self, v: SparseRow, tag: SparseRow) -> bool {
        let field = self.field;
        let (rem, acc) = self.reduce_tagged(v);
        let Some((&lead, _)) = rem.iter().next_back() else {
            return false;
        };
        // tag of the remainder = tag − accumulated
        let mut t: Work = tag.into_iter().collect();
        for (j, a) in acc {
            let slot = t.entry(j).or_insert_with(Scalar::zero);
            *slot = field.sub(slot, &a);
            if slot.is_zero() {
                t.remove(&j);
            }
        }
        let inv = field.inv(&rem[&lead]).expect("nonzero pivot");
        let row = rem.into_iter().map(|(j, x)| (j, field.mul(&x, &inv))).collect();
        let tag = t.into_iter().map(|(j, x)| (j, field.mul(&x, &inv))).collect();
        self.pivots.insert(lead, PivotRow { row, tag });
        true
    }
}
