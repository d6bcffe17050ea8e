//! Derived Clifford algebras of shifted quadratic complexes.

mod action;
mod classical;
mod compare;
mod maps;

pub use action::{hyperbolic_action, HyperbolicAction};
pub use classical::ClassicalClifford;
pub use compare::{h0_derived, h_minus_one_certificate, H0Comparison, HMinusOneCertificate};
pub use maps::{clifford_map, clifford_sum_iso, SumIso, SumIsoH0};

use std::collections::{BTreeMap, BTreeSet};

use crate::complexes::{parity_sign, Complex};
use crate::dga::{make_dga, make_morphism, DgaMorphism, Generator, Poly, Presentation};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseRow};
use crate::quadratic::QuadraticForm;

/// `Cliff(C, q, 2n)` as a semi-free dga with its generator bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordPresentation {
    form: QuadraticForm,
    n: i32,
    elements: Vec<(i32, usize)>,
    offsets: BTreeMap<i32, usize>,
    presentation: Presentation,
}

fn sanitize(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_whitespace() || "+-*;=#".contains(c) { '_' } else { c })
        .collect()
}

fn generator_names(c: &Complex, elements: &[(i32, usize)]) -> (Vec<String>, Vec<String>) {
    let n = elements.len();
    if n == 1 {
        return (vec!["x".into()], vec!["y".into()]);
    }
    let labels: Vec<String> = elements.iter().map(|&(i, k)| sanitize(&c.labels(i)[k])).collect();
    let unique = labels.iter().collect::<BTreeSet<_>>().len() == n && labels.iter().all(|l| !l.contains('_'));
    let labels: Vec<String> = if unique {
        labels
    } else {
        (1..=n).map(|k| k.to_string()).collect()
    };
    let xs = labels.iter().map(|l| format!("x_{l}")).collect();
    let ys = labels
        .iter()
        .flat_map(|a| labels.iter().map(move |b| format!("y_{a}_{b}")))
        .collect();
    (xs, ys)
}

/// Builds the presentation: `x_c` of degree `|c|+n`, weight 1, `d x_c = x_{dc}`;
/// `y_{c,c′}` of degree `|c|+|c′|+2n−1`, weight 2, with
/// `d y = x_c x_{c′} + (−1)^{|x_c||x_{c′}|} x_{c′} x_c − 2(−1)^{n|c|} q(c,c′) − y_{d(c⊗c′)}`.
pub fn derived_clifford(q: &QuadraticForm) -> Result<CliffordPresentation> {
    let s = q.shift();
    if s % 2 != 0 {
        return Err(Error::Precondition(format!("Clifford algebras need an even shift, got {s}")));
    }
    let n = s / 2;
    let c = q.carrier();
    let f = q.field();
    let elements = c.elements();
    let mut offsets = BTreeMap::new();
    let mut acc = 0;
    for i in c.degrees() {
        offsets.insert(i, acc);
        acc += c.dim(i);
    }
    let big_n = elements.len();
    let (xs, ys) = generator_names(c, &elements);
    let glob = |i: i32, k: usize| offsets[&i] + k;
    let y_index = |a: usize, b: usize| (big_n + a * big_n + b) as u32;

    let mut gens = Vec::with_capacity(big_n + big_n * big_n);
    for (a, &(i, _)) in elements.iter().enumerate() {
        gens.push(Generator::new(xs[a].clone(), i + n, 1));
    }
    for (a, &(i, _)) in elements.iter().enumerate() {
        for (b, &(j, _)) in elements.iter().enumerate() {
            gens.push(Generator::new(ys[a * big_n + b].clone(), i + j + 2 * n - 1, 2));
        }
    }
    let mut d = BTreeMap::new();
    let diffs: BTreeMap<i32, _> = c.degrees().into_iter().map(|i| (i, c.differential(i))).collect();
    // column k of d_i as (global index, coefficient)
    let d_col = |i: i32, k: usize| -> Vec<(usize, Scalar)> {
        diffs[&i]
            .entries()
            .filter(|(_, col, _)| *col == k)
            .map(|(row, _, x)| (glob(i + 1, row), x.clone()))
            .collect()
    };
    for (a, &(i, k)) in elements.iter().enumerate() {
        let mut p = Poly::zero();
        for (m, x) in d_col(i, k) {
            p.add_term(f, vec![m as u32], &x);
        }
        if !p.is_zero() {
            d.insert(xs[a].clone(), p);
        }
    }
    for (a, &(i, k)) in elements.iter().enumerate() {
        for (b, &(j, l)) in elements.iter().enumerate() {
            let mut p = Poly::zero();
            let one = f.int(1);
            p.add_term(f, vec![a as u32, b as u32], &one);
            let sw = f.int(parity_sign(((i + n) * (j + n)) as i64));
            p.add_term(f, vec![b as u32, a as u32], &sw);
            if j == -s - i {
                let v = q.value(i, k, l);
                if !v.is_zero() {
                    let t = f.mul(&f.int(-2 * parity_sign((n * i) as i64)), &v);
                    p.add_term(f, vec![], &t);
                }
            }
            for (m, x) in d_col(i, k) {
                p.add_term(f, vec![y_index(m, b)], &f.neg(&x));
            }
            let e = f.int(-parity_sign((i + n) as i64));
            for (m, x) in d_col(j, l) {
                p.add_term(f, vec![y_index(a, m)], &f.mul(&e, &x));
            }
            if !p.is_zero() {
                d.insert(ys[a * big_n + b].clone(), p);
            }
        }
    }
    let presentation = make_dga(f, gens, d)?;
    Ok(CliffordPresentation {
        form: q.clone(),
        n,
        elements,
        offsets,
        presentation,
    })
}

impl CliffordPresentation {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn complex(&self) -> &Complex {
        self.form.carrier()
    }

    /// Half the shift of the form.
    pub fn n(&self) -> i32 {
        self.n
    }

    /// Number of basis elements of the carrier.
    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    pub fn global_index(&self, i: i32, k: usize) -> usize {
        self.offsets[&i] + k
    }

    pub fn element(&self, a: usize) -> (i32, usize) {
        self.elements[a]
    }

    pub fn x_generator(&self, a: usize) -> u32 {
        a as u32
    }

    pub fn y_generator(&self, a: usize, b: usize) -> u32 {
        let n = self.rank();
        (n + a * n + b) as u32
    }

    /// `x_v` for `v ∈ C^i` given in local coordinates.
    pub fn x_of(&self, i: i32, v: &SparseRow) -> Poly {
        let f = self.form.field();
        let mut p = Poly::zero();
        for (k, c) in v {
            p.add_term(f, vec![self.global_index(i, *k) as u32], c);
        }
        p
    }

    pub fn is_weight_homogeneous(&self) -> bool {
        self.presentation.is_weight_homogeneous()
    }

    /// Rescaling `y ↦ 2y` onto the rank-one presentation with `d(y) = x²`.
    pub fn toen_rescaling(&self) -> Result<DgaMorphism> {
        let f = self.form.field();
        if self.rank() != 1 || self.n != 0 || !self.form.is_zero() || self.elements[0].0 != 0 {
            return Err(Error::Precondition("rescaling exists for k in degree 0 with q = 0".into()));
        }
        let toen = toen_presentation(f);
        let images = BTreeMap::from([
            ("x".to_string(), Poly::word(vec![0], f)),
            ("y".to_string(), Poly::monomial(f.int(2), vec![1])),
        ]);
        make_morphism(&self.presentation, &toen, images)
    }
}

/// `x` in degree 0 and weight 1, `y` in degree −1 and weight 2, `d(y) = x²`.
pub fn toen_presentation(field: crate::linalg::Field) -> Presentation {
    let gens = vec![Generator::new("x", 0, 1), Generator::new("y", -1, 2)];
    let d = BTreeMap::from([("y".to_string(), Poly::word(vec![0, 0], field))]);
    make_dga(field, gens, d).expect("d(y) = x² squares to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Field, Matrix};
    use crate::quadratic::{hyperbolic, make_form};

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_one_zero_form() {
        let c = Complex::concentrated(q(), 0, 1);
        let cl = derived_clifford(&QuadraticForm::zero(&c, 0)).unwrap();
        let p = cl.presentation();
        assert_eq!(p.format_poly(p.d_of(1)), "2*x*x");
        assert_eq!(p.generators()[1].degree, -1);
        assert!(cl.is_weight_homogeneous());
        assert!(cl.toen_rescaling().is_ok());
    }

    #[test]
    fn rank_two_relations() {
        let qf = QuadraticForm::gram(q(), Matrix::identity(q(), 2)).unwrap();
        let cl = derived_clifford(&qf).unwrap();
        let p = cl.presentation();
        let y11 = p.generator("y_1_1").unwrap();
        assert_eq!(p.format_poly(p.d_of(y11)), "2*x_1*x_1 - 2");
        let y12 = p.generator("y_1_2").unwrap();
        assert_eq!(p.format_poly(p.d_of(y12)), "x_1*x_2 + x_2*x_1");
        assert!(!cl.is_weight_homogeneous());
    }

    #[test]
    fn shifted_and_differential_carriers_validate() {
        let c = Complex::two_term(q(), -1, Matrix::from_i64(q(), &[&[1], &[2]])).unwrap();
        for n in [-1, 0, 1] {
            let h = hyperbolic(&c, n, n).unwrap();
            let cl = derived_clifford(&h).unwrap();
            assert_eq!(cl.rank(), 6);
        }
        let odd = make_form(&c, 1, BTreeMap::new()).unwrap();
        assert!(derived_clifford(&odd).is_err());
    }
}
