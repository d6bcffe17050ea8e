use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use qflab::complexes::{cohomology_dims, ChainMap, Complex};
use qflab::linalg::{rank, Field, Matrix, Scalar};
use qflab::quadratic::{
    check_isometry_witness, decalage, diagonalize, fiber_product_form, fixture, gw_invariants, hyperbolic,
    inverse_decalage, is_lagrangian, make_form, orthogonal_sum, pullback, qf_space_dim, square_class, transgress,
    HomotopyWitness, OrientedAlgebra, Pairing, QuadraticForm,
};
use qflab::random::{random_complex, random_form, random_matrix, rng};
use qflab::Error;

const Q: Field = Field::Rational;

fn gram(rows: &[&[i64]]) -> QuadraticForm {
    QuadraticForm::gram(Q, Matrix::from_i64(Q, rows)).unwrap()
}

fn arrow() -> Complex {
    Complex::two_term(Q, -1, Matrix::identity(Q, 1)).unwrap()
}

fn det3(m: &[Vec<Scalar>]) -> Scalar {
    let e = |i: usize, j: usize| m[i][j].clone();
    let t = |a: Scalar, b: Scalar, c: Scalar| Q.mul(&Q.mul(&a, &b), &c);
    let plus = [
        t(e(0, 0), e(1, 1), e(2, 2)),
        t(e(0, 1), e(1, 2), e(2, 0)),
        t(e(0, 2), e(1, 0), e(2, 1)),
    ];
    let minus = [
        t(e(0, 2), e(1, 1), e(2, 0)),
        t(e(0, 0), e(1, 2), e(2, 1)),
        t(e(0, 1), e(1, 0), e(2, 2)),
    ];
    let s = plus.iter().fold(Scalar::zero(), |a, x| Q.add(&a, x));
    minus.iter().fold(s, |a, x| Q.sub(&a, x))
}

#[test]
fn form_validation() {
    let k2 = Complex::concentrated(Q, 0, 2);
    assert!(make_form(&k2, 0, BTreeMap::from([(0, Matrix::identity(Q, 2))])).is_ok());
    let bad = make_form(&k2, 0, BTreeMap::from([(0, Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]))]));
    assert!(matches!(bad, Err(Error::Symmetry { .. })));
    // a in degree −1, b in degree 0, q(a, b) = 1
    let q = make_form(&arrow(), 1, BTreeMap::from([(0, Matrix::identity(Q, 1)), (-1, Matrix::identity(Q, 1))]));
    let q = q.unwrap();
    assert!(q.is_nondegenerate());
    assert!(q.adjoint().is_quasi_iso().unwrap());
}

#[test]
fn adjoints_and_nondegeneracy() {
    let q = gram(&[&[1, 0], &[0, 1]]);
    assert_eq!(q.adjoint().block(0), Matrix::identity(Q, 2));
    assert!(q.is_nondegenerate());
    let z = QuadraticForm::zero(&Complex::concentrated(Q, 0, 2), 0);
    assert!(z.adjoint().is_zero());
    assert!(!gram(&[&[1, 0], &[0, 0]]).is_nondegenerate());
    assert!(hyperbolic(&Complex::concentrated(Q, 0, 1), 0, 0).unwrap().is_nondegenerate());
}

#[test]
fn sums_and_pullbacks() {
    let one = gram(&[&[1]]);
    assert_eq!(orthogonal_sum(&one, &one).unwrap().gram_matrix().unwrap(), Matrix::identity(Q, 2));
    let zero = QuadraticForm::zero(&Complex::concentrated(Q, 0, 1), 0);
    assert!(!orthogonal_sum(&one, &zero).unwrap().is_nondegenerate());
    let h = hyperbolic(&Complex::concentrated(Q, 0, 1), 0, 0).unwrap();
    assert_eq!(pullback(&ChainMap::identity(h.carrier()), &h).unwrap(), h);
    let k = Complex::concentrated(Q, 0, 1);
    assert!(pullback(&ChainMap::zero(&k, h.carrier(), 0), &h).unwrap().is_zero());
    let first = ChainMap::new(k, h.carrier().clone(), 0, BTreeMap::from([(0, Matrix::from_i64(Q, &[&[1], &[0]]))]));
    assert!(pullback(&first.unwrap(), &h).unwrap().is_zero());
}

#[test]
fn hyperbolic_examples() {
    let k = Complex::concentrated(Q, 0, 1);
    let h = hyperbolic(&k, 0, 0).unwrap();
    assert_eq!(h.shift(), 0);
    assert_eq!(h.gram_matrix().unwrap(), Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]));
    let h1 = hyperbolic(&k, 1, 0).unwrap();
    assert_eq!(h1.shift(), 1);
    assert!(h1.is_nondegenerate());
}

#[test]
fn decalage_examples() {
    let k2 = Complex::concentrated(Q, 0, 2);
    let omega = Pairing::new(k2.clone(), k2.clone(), 0, BTreeMap::from([(0, Matrix::from_i64(Q, &[&[0, 1], &[-1, 0]]))]));
    let q = decalage(&omega.unwrap(), 1).unwrap();
    assert_eq!(q.carrier().dim(-1), 2);
    assert!(q.is_nondegenerate());
    assert!(decalage(&Pairing::zero(&k2, &k2, 0), 1).unwrap().is_zero());
    // symmetric input is not a symplectic structure
    let sym = Pairing::new(k2.clone(), k2.clone(), 0, BTreeMap::from([(0, Matrix::identity(Q, 2))])).unwrap();
    assert!(decalage(&sym, 1).is_err());
}

#[test]
fn quadratic_space_dimensions() {
    assert_eq!(qf_space_dim(&Complex::concentrated(Q, 0, 1), 0), 1);
    let odd = Complex::concentrated(Q, -1, 1);
    assert!((-6..=6).all(|s| qf_space_dim(&odd, s) == 0));
    let c = Complex::concentrated(Q, -2, 1);
    for s in -6..=6 {
        assert_eq!(qf_space_dim(&c, s) > 0, s == 4, "s = {s}");
    }
}

#[test]
fn isometry_witnesses() {
    let q = gram(&[&[1, 2], &[2, 3]]);
    let id = ChainMap::identity(q.carrier());
    let h0 = HomotopyWitness::zero(q.carrier(), 0);
    assert!(check_isometry_witness(&id, &q, &q, &h0).unwrap());
    let h = hyperbolic(&Complex::concentrated(Q, 0, 1), 0, 0).unwrap();
    let k = Complex::concentrated(Q, 0, 1);
    let incl = ChainMap::new(k.clone(), h.carrier().clone(), 0, BTreeMap::from([(0, Matrix::from_i64(Q, &[&[1], &[0]]))]));
    let incl = incl.unwrap();
    let zk = QuadraticForm::zero(&k, 0);
    assert!(check_isometry_witness(&incl, &zk, &h, &HomotopyWitness::zero(&k, 0)).unwrap());
    assert!(!check_isometry_witness(&id, &q, &q.scale(&Q.int(2)), &h0).unwrap());
}

#[test]
fn lagrangians_and_fiber_products() {
    let h = hyperbolic(&Complex::concentrated(Q, 0, 1), 0, 0).unwrap();
    let k = Complex::concentrated(Q, 0, 1);
    let zero_map = ChainMap::zero(&Complex::zero(Q), h.carrier(), 0);
    assert!(!is_lagrangian(&zero_map, &h, &HomotopyWitness::zero(&Complex::zero(Q), 0)).unwrap());

    // loop: identity twice into (C ⊕ C, q ⊥ −q) via the diagonal
    let q = gram(&[&[2, 1], &[1, 1]]);
    let vv = orthogonal_sum(&q, &q.neg()).unwrap();
    let diag = ChainMap::new(
        q.carrier().clone(),
        vv.carrier().clone(),
        0,
        BTreeMap::from([(0, Matrix::from_i64(Q, &[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]))]),
    )
    .unwrap();
    let g = HomotopyWitness::zero(q.carrier(), 0);
    assert!(is_lagrangian(&diag, &vv, &g).unwrap());
    let z = fiber_product_form(&vv, &diag, &g, &diag, &g).unwrap();
    assert_eq!(z.shift(), vv.shift() - 1);
    assert!(z.is_nondegenerate());

    let zh = QuadraticForm::zero(h.carrier(), 0);
    let zero_in = ChainMap::zero(&k, h.carrier(), 0);
    let gk = HomotopyWitness::zero(&k, 0);
    let zz = fiber_product_form(&zh, &zero_in, &gk, &zero_in, &gk).unwrap();
    assert!(zz.is_zero());
    assert_eq!(zz.shift(), -1);
}

#[test]
fn transgression_examples() {
    let one = gram(&[&[1]]);
    let sphere = OrientedAlgebra::sphere(Q, 2).unwrap();
    let t = transgress(&one, &sphere).unwrap();
    assert_eq!(t.shift(), -2);
    assert_eq!(t.carrier().total_dim(), 2);
    assert!(t.is_nondegenerate());
    let blocks: Vec<&Matrix> = t.blocks().values().filter(|m| !m.is_zero()).collect();
    assert!(blocks.iter().all(|m| m.nnz() == 1 && m.shape() == (1, 1)));

    let q = gram(&[&[1, 2], &[2, -3]]);
    let p = transgress(&q, &OrientedAlgebra::point(Q)).unwrap();
    assert_eq!((p.shift(), p.gram_matrix().unwrap()), (0, q.gram_matrix().unwrap()));

    // circle: same cohomology as the loop fiber product of the diagonal with itself
    let l = transgress(&q, &OrientedAlgebra::circle(Q)).unwrap();
    assert_eq!(l.shift(), -1);
    let vv = orthogonal_sum(&q, &q.neg()).unwrap();
    let diag = ChainMap::new(
        q.carrier().clone(),
        vv.carrier().clone(),
        0,
        BTreeMap::from([(0, Matrix::from_i64(Q, &[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]))]),
    )
    .unwrap();
    let g = HomotopyWitness::zero(q.carrier(), 0);
    let z = fiber_product_form(&vv, &diag, &g, &diag, &g).unwrap();
    assert_eq!(z.shift(), l.shift());
    assert_eq!(cohomology_dims(z.carrier()), cohomology_dims(l.carrier()));
}

#[test]
fn fixtures() {
    let p = fixture(Q, "poincare_sphere", &[Q.int(2)]).unwrap().form;
    assert_eq!((p.carrier().dim(-2), p.carrier().dim(0), p.shift()), (1, 1, 2));
    assert!(p.is_nondegenerate());
    let t = fixture(Q, "trace_gl", &[Q.int(2)]).unwrap().form;
    let g = t.gram_matrix().unwrap();
    assert_eq!(g.shape(), (4, 4));
    // E11, E12, E21, E22
    assert_eq!(g.get(0, 0), Q.int(1));
    assert_eq!(g.get(1, 2), Q.int(1));
    assert_eq!(rank(&g), 4);
    let d = fixture(Q, "diagonal", &[Q.int(1), Q.int(1)]).unwrap().form;
    assert_eq!(d.gram_matrix().unwrap(), Matrix::identity(Q, 2));
    assert!(fixture(Q, "nope", &[]).is_err());
}

#[test]
fn gw_examples() {
    let i = gw_invariants(&gram(&[&[1, 0], &[0, 1]])).unwrap();
    assert_eq!((i.rank, i.discriminant.clone(), i.signature), (2, BigInt::from(1), 2));
    let h = gw_invariants(&gram(&[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!((h.rank, h.discriminant.clone(), h.signature), (2, BigInt::from(-1), 0));
    assert_eq!(square_class(&Scalar::from_frac(12, 5)), BigInt::from(15));
    assert_eq!(square_class(&Scalar::from_frac(-8, 1)), BigInt::from(-2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hyperbolic_forms_are_nondegenerate(seed in any::<u64>(), n in -1i32..=1, m in -1i32..=1) {
        let c = random_complex(&mut rng(seed), Q, -2, 1, 2);
        let h = hyperbolic(&c, n, m).unwrap();
        prop_assert!(h.is_nondegenerate());
        prop_assert!(h.is_nondegenerate_by_cohomology());
    }

    #[test]
    fn nondegenerate_sums(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = hyperbolic(&random_complex(&mut r, Q, -1, 1, 2), 0, 0).unwrap();
        let b = hyperbolic(&random_complex(&mut r, Q, -1, 1, 2), 0, 0).unwrap();
        prop_assert!(orthogonal_sum(&a, &b).unwrap().is_nondegenerate());
    }

    #[test]
    fn nondegeneracy_routes_agree(seed in any::<u64>(), s in -2i32..=2) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, Q, -2, 1, 2);
        let q = random_form(&mut r, &c, s).unwrap();
        prop_assert_eq!(q.is_nondegenerate(), q.is_nondegenerate_by_cohomology());
    }

    #[test]
    fn gram_nondegeneracy_is_full_rank(seed in any::<u64>()) {
        let a = random_matrix(&mut rng(seed), Q, 3, 3, 2);
        let g = a.add(&a.transpose());
        let q = QuadraticForm::gram(Q, g.clone()).unwrap();
        prop_assert_eq!(q.is_nondegenerate(), rank(&g) == 3);
    }

    #[test]
    fn decalage_round_trip(seed in any::<u64>(), eps in prop::sample::select(vec![-1i32, 1])) {
        let a = random_matrix(&mut rng(seed), Q, 4, 4, 3);
        let w = a.sub(&a.transpose());
        let v = Complex::concentrated(Q, 0, 4);
        let omega = Pairing::new(v.clone(), v, 0, BTreeMap::from([(0, w.clone())])).unwrap();
        let q = decalage(&omega, eps).unwrap();
        prop_assert_eq!(q.shift(), 2 * eps);
        prop_assert_eq!(q.is_nondegenerate(), rank(&w) == 4);
        let back = inverse_decalage(&q, eps).unwrap();
        prop_assert_eq!(back.block(0), w);
    }

    #[test]
    fn diagonalization_keeps_determinant_class(seed in any::<u64>()) {
        let a = random_matrix(&mut rng(seed), Q, 3, 3, 3);
        let g = a.add(&a.transpose()).to_dense();
        let det = det3(&g);
        let diag = diagonalize(&g);
        let nonzero: Vec<&Scalar> = diag.iter().filter(|x| !x.is_zero()).collect();
        prop_assert_eq!(nonzero.len(), rank(&Matrix::from_rows(Q, g.clone()).unwrap()));
        if !det.is_zero() {
            let prod = diag.iter().fold(Scalar::one(), |p, x| Q.mul(&p, x));
            prop_assert_eq!(square_class(&prod), square_class(&det));
        }
    }

    #[test]
    fn gw_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vals = [-5i64, -2, -1, 1, 3, 7];
        let a = qflab::random::random_diagonal(&mut r, Q, 2, &vals);
        let b = qflab::random::random_diagonal(&mut r, Q, 2, &vals);
        let (ia, ib) = (gw_invariants(&a).unwrap(), gw_invariants(&b).unwrap());
        let s = gw_invariants(&orthogonal_sum(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(s.rank, ia.rank + ib.rank);
        prop_assert_eq!(s.signature, ia.signature + ib.signature);
        prop_assert_eq!(s.discriminant, square_class(&Scalar::from_bigint(&ia.discriminant * &ib.discriminant)));
    }

    #[test]
    fn sphere_transgression_lowers_shift_by_two(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed), Q, -1, 1, 2);
        let h = hyperbolic(&c, 0, 0).unwrap();
        let t = transgress(&h, &OrientedAlgebra::sphere(Q, 2).unwrap()).unwrap();
        prop_assert_eq!(t.shift(), -2);
        prop_assert!(t.is_nondegenerate());
        prop_assert_eq!(t.carrier().total_dim(), 2 * h.carrier().total_dim());
    }
}
