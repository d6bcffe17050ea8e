use std::collections::BTreeMap;

use proptest::prelude::*;
use qflab::clifford::{
    clifford_map, clifford_sum_iso, derived_clifford, h0_derived, h_minus_one_certificate, hyperbolic_action,
    ClassicalClifford,
};
use qflab::complexes::{direct_sum, induced_map, ChainMap, Complex};
use qflab::dga::{DgaMorphism, Truncation};
use qflab::linalg::{rank, Field, Matrix, Scalar};
use qflab::quadratic::{pullback, HomotopyWitness, Pairing, QuadraticForm};
use qflab::random::{random_complex, random_form, random_matrix, rng};
use rand::Rng;

const Q: Field = Field::Rational;
const CAP: usize = 20000;

fn gram(rows: &[&[i64]]) -> QuadraticForm {
    QuadraticForm::gram(Q, Matrix::from_i64(Q, rows)).unwrap()
}

fn small_complex<R: Rng>(r: &mut R) -> Complex {
    loop {
        let c = random_complex(r, Q, -2, 1, 2);
        if (1..=4).contains(&c.total_dim()) {
            return c;
        }
    }
}

fn random_witness<R: Rng>(r: &mut R, c: &Complex, s: i32) -> HomotopyWitness {
    let blocks = c
        .degrees()
        .into_iter()
        .map(|i| (i, random_matrix(r, Q, c.dim(i), c.dim(-(s - 1) - i), 2)))
        .collect();
    let p = Pairing::new(c.clone(), c.clone(), s - 1, blocks).unwrap();
    let sym = p.add(&p.graded_transpose()).unwrap();
    HomotopyWitness::new(c, s, sym.blocks().clone()).unwrap()
}

// q₁ = f*q₂ + δh
fn perturbed_pullback(f: &ChainMap, q2: &QuadraticForm, h: &HomotopyWitness) -> QuadraticForm {
    let p = pullback(f, q2).unwrap().pairing().add(&h.boundary()).unwrap();
    QuadraticForm::from_pairing(p).unwrap()
}

#[test]
fn presentation_examples() {
    let k = Complex::concentrated(Q, 0, 1);
    let toen = derived_clifford(&QuadraticForm::zero(&k, 0)).unwrap();
    let p = toen.presentation();
    let y = p.generator("y").unwrap();
    assert_eq!(p.generators()[y as usize].degree, -1);
    assert_eq!(p.generators()[y as usize].weight, 2);
    assert_eq!(p.format_poly(p.d_of(y)), "2*x*x");

    let zero2 = derived_clifford(&QuadraticForm::zero(&Complex::concentrated(Q, 0, 2), 0)).unwrap();
    let d = zero2.presentation().differentials();
    assert_eq!(zero2.presentation().generators().iter().filter(|g| g.name.starts_with('y')).count(), 4);
    assert_eq!(zero2.presentation().format_poly(&d["y_1_2"]), "x_1*x_2 + x_2*x_1");

    let id2 = derived_clifford(&gram(&[&[1, 0], &[0, 1]])).unwrap();
    assert_eq!(id2.presentation().format_poly(&id2.presentation().differentials()["y_1_1"]), "2*x_1*x_1 - 2");
    assert!(derived_clifford(&QuadraticForm::zero(&k, 1)).is_err());
}

#[test]
fn classical_clifford_examples() {
    let one = ClassicalClifford::new(Matrix::identity(Q, 1)).unwrap();
    assert_eq!((one.dim(), one.mul_basis(1, 1)), (2, BTreeMap::from([(0, Q.int(1))])));
    let hyp = ClassicalClifford::new(Matrix::from_i64(Q, &[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!(hyp.dim(), 4);
    let e1 = [0, 1, 0, 0].map(|x| Q.int(x));
    let e2 = [0, 0, 1, 0].map(|x| Q.int(x));
    let anti: Vec<Scalar> = hyp.mul(&e1, &e2).iter().zip(hyp.mul(&e2, &e1)).map(|(a, b)| Q.add(a, &b)).collect();
    assert_eq!(anti, [2, 0, 0, 0].map(|x| Q.int(x)));
    for r in 0..=5 {
        assert_eq!(ClassicalClifford::new(Matrix::identity(Q, r)).unwrap().dim(), 1 << r);
    }
}

#[test]
fn h0_examples() {
    let h = h0_derived(&gram(&[&[1, 0], &[0, 1]]), 6, CAP).unwrap();
    assert_eq!((h.dim, h.classical_dim()), (4, 4));
    assert!(h.agree());
    let dual_numbers = h0_derived(&QuadraticForm::zero(&Complex::concentrated(Q, 0, 1), 0), 6, CAP).unwrap();
    assert_eq!(dual_numbers.dim, 2);
    // on [a → b] in degrees −1, 0 the chain condition forces q = 0
    let acyclic = Complex::two_term(Q, -1, Matrix::identity(Q, 1)).unwrap();
    let h = h0_derived(&QuadraticForm::zero(&acyclic, 0), 4, CAP).unwrap();
    assert_eq!((h.dim, h.classical_dim()), (1, 1));
    assert!(h.agree());
}

#[test]
fn h_minus_one_examples() {
    let zero = |r| QuadraticForm::zero(&Complex::concentrated(Q, 0, r), 0);
    let c1 = h_minus_one_certificate(&zero(1), 6, CAP).unwrap().unwrap();
    assert_eq!(c1.cycle_text(), "x*y - y*x");
    assert!(c1.nonzero());
    let c2 = h_minus_one_certificate(&zero(2), 6, CAP).unwrap().unwrap();
    assert_eq!(c2.cycle_text(), "y_1_2 - y_2_1");
    assert!(c2.nonzero());
    assert!(h_minus_one_certificate(&gram(&[&[1, 0], &[0, 1]]), 6, CAP).unwrap().is_none());
}

#[test]
fn inclusion_embeds_h0() {
    let q2 = gram(&[&[1, 0], &[0, 1]]);
    let k = Complex::concentrated(Q, 0, 1);
    let incl = ChainMap::new(k.clone(), q2.carrier().clone(), 0, BTreeMap::from([(0, Matrix::from_i64(Q, &[&[1], &[0]]))]))
        .unwrap();
    let q1 = pullback(&incl, &q2).unwrap();
    let m = clifford_map(&incl, &q1, &q2, &HomotopyWitness::zero(&k, 0)).unwrap();
    assert_eq!(m.table()["x"], "x_1");
    let ts = Truncation::new(m.source(), 4, 0, 0, CAP).unwrap();
    let tt = Truncation::new(m.target(), 4, 0, 0, CAP).unwrap();
    let chain = m.on_truncations(&ts, &tt).unwrap();
    let (hs, ht) = (ts.cohomology_at(0), tt.cohomology_at(0));
    assert_eq!((hs.dim(), ht.dim()), (2, 4));
    assert_eq!(rank(&induced_map(&chain, &hs, &ht)), 2);
}

#[test]
fn quasi_isomorphism_gives_h0_isomorphism() {
    // k ⊕ [a → b] projects onto k
    let acyclic = Complex::two_term(Q, -1, Matrix::identity(Q, 1)).unwrap();
    let k = Complex::concentrated(Q, 0, 1);
    let big = direct_sum(&k, &acyclic).unwrap();
    let proj = ChainMap::new(
        big.clone(),
        k.clone(),
        0,
        BTreeMap::from([(0, Matrix::from_i64(Q, &[&[1, 0]]))]),
    )
    .unwrap();
    assert!(proj.is_quasi_iso().unwrap());
    let q2 = gram(&[&[1]]);
    let q1 = pullback(&proj, &q2).unwrap();
    let m = clifford_map(&proj, &q1, &q2, &HomotopyWitness::zero(&big, 0)).unwrap();
    for w in [2, 4] {
        let ts = Truncation::new(m.source(), w, 0, 0, CAP).unwrap();
        let tt = Truncation::new(m.target(), w, 0, 0, CAP).unwrap();
        let chain = m.on_truncations(&ts, &tt).unwrap();
        let (hs, ht) = (ts.cohomology_at(0), tt.cohomology_at(0));
        assert_eq!((hs.dim(), ht.dim()), (2, 2), "w = {w}");
        assert_eq!(rank(&induced_map(&chain, &hs, &ht)), 2);
    }
}

#[test]
fn sum_iso_examples() {
    let one = gram(&[&[1]]);
    let h = clifford_sum_iso(&one, &one).unwrap().h0(4, CAP).unwrap();
    assert!(h.is_iso());
    assert_eq!((h.source_dim, h.target_dim), (4, 4));

    let k = Complex::concentrated(Q, 0, 1);
    let z = QuadraticForm::zero(&k, 0);
    let iso = clifford_sum_iso(&z, &z).unwrap();
    // summand labels are tagged 1: and 2:, cross generators die
    let t = iso.morphism.table();
    assert_eq!((t["y_1:1_2:1"].as_str(), t["y_2:1_1:1"].as_str()), ("0", "0"));
    assert_eq!((t["y_1:1_1:1"].as_str(), t["y_2:1_2:1"].as_str()), ("l.y", "r.y"));
    let src = iso.source.presentation();
    assert_eq!(src.format_poly(&src.parse_poly("y_1:1_2:1 - 2*x_2:1").unwrap()), "-2*x_2:1 + y_1:1_2:1");

    let empty = QuadraticForm::zero(&Complex::zero(Q), 0);
    let unit = clifford_sum_iso(&one, &empty).unwrap();
    assert_eq!(unit.morphism.table()["x"], "l.x");
    assert_eq!(unit.morphism.table()["y"], "l.y");
}

#[test]
fn hyperbolic_actions() {
    for r in 1..=3 {
        let a = hyperbolic_action(Q, r).unwrap();
        assert!(a.relations_hold);
        assert_eq!(a.structure_rank, 1 << (2 * r));
        assert_eq!(a.generators[0].shape(), (1 << r, 1 << r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn clifford_differential_squares_to_zero(seed in any::<u64>(), n in -1i32..=1) {
        let mut r = rng(seed);
        let c = small_complex(&mut r);
        let q = random_form(&mut r, &c, 2 * n).unwrap();
        let cl = derived_clifford(&q).unwrap();
        let p = cl.presentation();
        for g in 0..p.generators().len() as u32 {
            prop_assert!(p.d_poly(p.d_of(g)).is_zero());
            prop_assert_eq!(p.d_poly(&qflab::dga::Poly::word(vec![g], Q)), p.d_of(g).clone());
        }
        prop_assert_eq!(cl.is_weight_homogeneous(), q.is_zero());
        prop_assert_eq!(p.generators().len(), c.total_dim() * (c.total_dim() + 1));
    }

    #[test]
    fn classical_clifford_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, Q, 3, 3, 2);
        let cl = ClassicalClifford::new(a.add(&a.transpose())).unwrap();
        let v = |r: &mut rand_chacha::ChaCha8Rng| (0..8).map(|_| Q.int(r.gen_range(-2..=2))).collect::<Vec<_>>();
        let (x, y, z) = (v(&mut r), v(&mut r), v(&mut r));
        prop_assert_eq!(cl.mul(&cl.mul(&x, &y), &z), cl.mul(&x, &cl.mul(&y, &z)));
        // e_i e_j + e_j e_i = 2 Q_ij
        for i in 0..3 {
            for j in 0..3 {
                let mut sum = cl.mul_basis(1 << i, 1 << j);
                for (k, c) in cl.mul_basis(1 << j, 1 << i) {
                    let e = sum.entry(k).or_insert_with(Scalar::zero);
                    *e = Q.add(e, &c);
                }
                sum.retain(|_, c| !c.is_zero());
                let want = Q.mul(&Q.int(2), &cl.gram().get(i, j));
                let expected = if want.is_zero() { BTreeMap::new() } else { BTreeMap::from([(0, want)]) };
                prop_assert_eq!(sum, expected);
            }
        }
    }

    #[test]
    fn clifford_maps_compose(seed in any::<u64>(), a in prop::sample::select(vec![1i64, -1, 2]), b in prop::sample::select(vec![1i64, -1, 3])) {
        let mut r = rng(seed);
        let c = small_complex(&mut r);
        let s = 0;
        let f = ChainMap::identity(&c).scale(&Q.int(a));
        let g = ChainMap::identity(&c).scale(&Q.int(b));
        let q3 = random_form(&mut r, &c, s).unwrap();
        let hg = random_witness(&mut r, &c, s);
        let q2 = perturbed_pullback(&g, &q3, &hg);
        let hf = random_witness(&mut r, &c, s);
        let q1 = perturbed_pullback(&f, &q2, &hf);
        let mf = clifford_map(&f, &q1, &q2, &hf).unwrap();
        let mg = clifford_map(&g, &q2, &q3, &hg).unwrap();
        let composite_witness = hf.add(&hg.pullback(&f).unwrap()).unwrap();
        let mgf = clifford_map(&g.after(&f).unwrap(), &q1, &q3, &composite_witness).unwrap();
        prop_assert_eq!(mg.after(&mf).unwrap(), mgf);
        let id = clifford_map(&ChainMap::identity(&c), &q1, &q1, &HomotopyWitness::zero(&c, s)).unwrap();
        prop_assert_eq!(id, DgaMorphism::identity(mf.source()));
    }
}
