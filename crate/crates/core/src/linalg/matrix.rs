use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// One sparse row: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Matrix over a [`Field`]. Storage is row-sparse; every contract is stated
/// for the dense matrix it represents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl Matrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        Matrix {
            field,
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, field.int(1))]).collect();
        Matrix {
            field,
            nrows: n,
            ncols: n,
            rows,
        }
    }

    pub fn scalar_multiple_of_identity(field: Field, n: usize, c: &Scalar) -> Self {
        Matrix::identity(field, n).scale(c)
    }

    /// Dense constructor; entries are mapped into the field.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let nrows = rows.len();
        let mut sparse = Vec::with_capacity(nrows);
        for row in rows {
            let mut out = Vec::new();
            for (j, x) in row.into_iter().enumerate() {
                let x = field.element(&x)?;
                if !x.is_zero() {
                    out.push((j, x));
                }
            }
            sparse.push(out);
        }
        Ok(Matrix {
            field,
            nrows,
            ncols,
            rows: sparse,
        })
    }

    /// Dense constructor with an explicit shape, so 0×n and n×0 are expressible.
    pub fn from_rows_shaped(field: Field, nrows: usize, ncols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension(format!(
                "expected a {nrows}×{ncols} matrix"
            )));
        }
        let mut m = Matrix::from_rows(field, rows)?;
        m.nrows = nrows;
        m.ncols = ncols;
        if m.rows.len() != nrows {
            m.rows = vec![Vec::new(); nrows];
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Matrix::from_rows(field, dense).expect("integer matrix")
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions add up.
    pub fn assemble(
        field: Field,
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); nrows];
        for (i, j, x) in entries {
            assert!(i < nrows && j < ncols, "entry ({i},{j}) outside {nrows}×{ncols}");
            let slot = acc[i].entry(j).or_insert_with(Scalar::zero);
            *slot = field.add(slot, &x);
        }
        let rows = acc
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        Matrix {
            field,
            nrows,
            ncols,
            rows,
        }
    }

    /// Builds from sparse rows that are already in field canonical form.
    pub fn from_sparse_rows(field: Field, ncols: usize, rows: Vec<SparseRow>) -> Self {
        let nrows = rows.len();
        Matrix::assemble(
            field,
            nrows,
            ncols,
            rows.into_iter()
                .enumerate()
                .flat_map(|(i, r)| r.into_iter().map(move |(j, x)| (i, j, x))),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        let row = &self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => row[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.nrows)
            .map(|i| {
                let mut row = vec![Scalar::zero(); self.ncols];
                for (j, x) in &self.rows[i] {
                    row[*j] = x.clone();
                }
                row
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    /// Columns as sparse vectors (indexed by row).
    pub fn sparse_columns(&self) -> Vec<SparseRow> {
        self.transpose().rows
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<SparseRow> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                cols[*j].push((i, x.clone()));
            }
        }
        Matrix {
            field: self.field,
            nrows: self.ncols,
            ncols: self.nrows,
            rows: cols,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch in product");
        assert_eq!(
            self.ncols, other.nrows,
            "cannot multiply {}×{} by {}×{}",
            self.nrows, self.ncols, other.nrows, other.ncols
        );
        let f = self.field;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.rows[*k] {
                        let slot = acc.entry(*j).or_insert_with(Scalar::zero);
                        *slot = f.add(slot, &f.mul(a, b));
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        Matrix {
            field: f,
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.ncols, v.len());
        let f = self.field;
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Scalar::zero(), |acc, (j, x)| f.add(&acc, &f.mul(x, &v[*j])))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        Matrix::assemble(
            self.field,
            self.nrows,
            self.ncols,
            self.entries()
                .chain(other.entries())
                .map(|(i, j, x)| (i, j, x.clone())),
        )
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        let c = f.element(c).expect("scale factor outside the field");
        let rows = if c.is_zero() {
            vec![Vec::new(); self.nrows]
        } else {
            self.rows
                .iter()
                .map(|r| r.iter().map(|(j, x)| (*j, f.mul(x, &c))).collect())
                .collect()
        };
        Matrix {
            field: f,
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// Block matrix from `(row_block, col_block, matrix)` placements.
    pub fn from_blocks(
        field: Field,
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[(usize, usize, &Matrix)],
    ) -> Matrix {
        let offsets = |sizes: &[usize]| {
            let mut acc = 0;
            sizes
                .iter()
                .map(|s| {
                    let o = acc;
                    acc += s;
                    o
                })
                .collect::<Vec<_>>()
        };
        let ro = offsets(row_sizes);
        let co = offsets(col_sizes);
        let nrows = row_sizes.iter().sum();
        let ncols = col_sizes.iter().sum();
        let mut entries = Vec::new();
        for (bi, bj, m) in blocks {
            assert_eq!(m.nrows, row_sizes[*bi], "block row size");
            assert_eq!(m.ncols, col_sizes[*bj], "block column size");
            for (i, j, x) in m.entries() {
                entries.push((ro[*bi] + i, co[*bj] + j, x.clone()));
            }
        }
        Matrix::assemble(field, nrows, ncols, entries)
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        Matrix::from_blocks(
            self.field,
            &[self.nrows, other.nrows],
            &[self.ncols, other.ncols],
            &[(0, 0, self), (1, 1, other)],
        )
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let mut entries = Vec::new();
        for (i, j, a) in self.entries() {
            for (k, l, b) in other.entries() {
                entries.push((i * other.nrows + k, j * other.ncols + l, f.mul(a, b)));
            }
        }
        Matrix::assemble(f, self.nrows * other.nrows, self.ncols * other.ncols, entries)
    }

    /// Reinterprets the matrix over another field (entries are re-reduced).
    pub fn change_field(&self, field: Field) -> Result<Matrix> {
        Matrix::from_rows_shaped(field, self.nrows, self.ncols, self.to_dense())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}×{} [", self.nrows, self.ncols)?;
        for (i, row) in self.to_dense().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}
