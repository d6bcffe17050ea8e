use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// `T(V)/⟨e_i e_j + e_j e_i − 2Q_ij⟩` with PBW basis `e_S`, `S` a bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalClifford {
    q: Matrix,
}

type Vector = BTreeMap<u32, Scalar>;

fn push(field: Field, v: &mut Vector, k: u32, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(k).or_insert_with(Scalar::zero);
    *slot = field.add(slot, c);
    if slot.is_zero() {
        v.remove(&k);
    }
}

impl ClassicalClifford {
    pub fn new(q: Matrix) -> Result<Self> {
        let (r, c) = q.shape();
        if r != c {
            return Err(Error::Dimension(format!("Gram matrix is {r}×{c}")));
        }
        if r > 16 {
            return Err(Error::Resource {
                what: "Clifford basis".into(),
                count: 1 << r.min(30),
                cap: 1 << 16,
            });
        }
        if q.transpose() != q {
            let (i, j) = (0..r)
                .flat_map(|i| (0..r).map(move |j| (i, j)))
                .find(|&(i, j)| q.get(i, j) != q.get(j, i))
                .expect("asymmetric entry");
            return Err(Error::Symmetry {
                left: format!("e{}", i + 1),
                right: format!("e{}", j + 1),
            });
        }
        Ok(ClassicalClifford { q })
    }

    pub fn field(&self) -> Field {
        self.q.field()
    }

    pub fn gram(&self) -> &Matrix {
        &self.q
    }

    pub fn rank(&self) -> usize {
        self.q.nrows()
    }

    pub fn dim(&self) -> usize {
        1 << self.rank()
    }

    /// `"1"`, `"e1"`, `"e13"`; indices are `_`-separated from rank 10 on.
    pub fn basis_name(&self, s: u32) -> String {
        if s == 0 {
            return "1".into();
        }
        let idx: Vec<String> = (0..self.rank())
            .filter(|i| s & (1 << i) != 0)
            .map(|i| (i + 1).to_string())
            .collect();
        let sep = if self.rank() >= 10 { "_" } else { "" };
        format!("e{}", idx.join(sep))
    }

    /// `e_S · e_i`.
    fn mul_gen(&self, s: u32, i: usize) -> Vector {
        let f = self.field();
        let mut out = Vector::new();
        if s == 0 {
            out.insert(1 << i, f.int(1));
            return out;
        }
        let top = 31 - s.leading_zeros() as usize;
        let rest = s & !(1 << top);
        if top < i {
            out.insert(s | (1 << i), f.int(1));
        } else if top == i {
            push(f, &mut out, rest, &self.q.get(i, i));
        } else {
            for (t, c) in self.mul_gen(rest, i) {
                push(f, &mut out, t | (1 << top), &f.neg(&c));
            }
            push(f, &mut out, rest, &f.mul(&f.int(2), &self.q.get(top, i)));
        }
        out
    }

    /// `e_S · e_T` in the PBW basis.
    pub fn mul_basis(&self, s: u32, t: u32) -> Vector {
        let f = self.field();
        let mut acc = Vector::from([(s, f.int(1))]);
        for i in (0..self.rank()).filter(|i| t & (1 << i) != 0) {
            let mut next = Vector::new();
            for (u, c) in &acc {
                for (v, d) in self.mul_gen(*u, i) {
                    push(f, &mut next, v, &f.mul(c, &d));
                }
            }
            acc = next;
        }
        acc
    }

    /// Product of dense coordinate vectors.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![Scalar::zero(); self.dim()];
        for (s, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (t, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = f.mul(x, y);
                for (u, c) in self.mul_basis(s as u32, t as u32) {
                    out[u as usize] = f.add(&out[u as usize], &f.mul(&xy, &c));
                }
            }
        }
        out
    }

    /// Nonzero structure constants keyed by `"e1*e2"`.
    pub fn table(&self) -> BTreeMap<String, BTreeMap<String, Scalar>> {
        let mut out = BTreeMap::new();
        for s in 0..self.dim() as u32 {
            for t in 0..self.dim() as u32 {
                let prod = self.mul_basis(s, t);
                if prod.is_empty() {
                    continue;
                }
                let key = format!("{}*{}", self.basis_name(s), self.basis_name(t));
                out.insert(key, prod.into_iter().map(|(u, c)| (self.basis_name(u), c)).collect());
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let table: Map<String, Value> = self
            .table()
            .into_iter()
            .map(|(k, row)| {
                let row: Map<String, Value> = row
                    .into_iter()
                    .map(|(u, c)| (u, crate::json::scalar_to_json(&c)))
                    .collect();
                (k, Value::Object(row))
            })
            .collect();
        json!({"dim": self.dim(), "table": table})
    }
}
