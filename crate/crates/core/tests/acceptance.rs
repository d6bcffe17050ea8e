//! The twelve acceptance checks, one PASS/FAIL line each with its time budget.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qflab::clifford::{
    clifford_sum_iso, derived_clifford, h0_derived, h_minus_one_certificate, hyperbolic_action, toen_presentation,
};
use qflab::complexes::{cone, direct_sum, dual, shift, sym2, tensor, wedge2, ChainMap, Complex};
use qflab::dga::{push_class, Truncation};
use qflab::linalg::{Field, Matrix, Scalar};
use qflab::quadratic::{
    fiber_product_form, gw_invariants, hyperbolic, is_lagrangian, orthogonal_sum, square_class, transgress,
    HomotopyWitness, OrientedAlgebra, QuadraticForm,
};
use qflab::random::{random_complex, random_diagonal, random_form, rng};
use rand::Rng;

const Q: Field = Field::Rational;
const CAP: usize = 20000;

fn squares_to_zero(c: &Complex) -> bool {
    let degs = c.degrees();
    let (Some(&lo), Some(&hi)) = (degs.first(), degs.last()) else {
        return true;
    };
    (lo - 1..=hi).all(|i| c.differential(i + 1).mul(&c.differential(i)).is_zero())
}

fn gram(rows: &[&[i64]]) -> QuadraticForm {
    QuadraticForm::gram(Q, Matrix::from_i64(Q, rows)).unwrap()
}

fn line(rows: &[&[i64]], target: &Complex) -> ChainMap {
    let src = Complex::concentrated(Q, 0, 1);
    ChainMap::new(src, target.clone(), 0, BTreeMap::from([(0, Matrix::from_i64(Q, rows))])).unwrap()
}

fn c1_sign_coherence() -> Result<String, String> {
    let mut r = rng(1);
    for k in 0..200 {
        let c = random_complex(&mut r, Q, -3, 1, 4);
        let d = random_complex(&mut r, Q, -3, 1, 4);
        let mut built = vec![
            ("shift", shift(&c, r.gen_range(-2..=2))),
            ("dual", dual(&c)),
            ("tensor", tensor(&c, &d).unwrap()),
            ("direct_sum", direct_sum(&c, &d).unwrap()),
            ("cone(id)", cone(&ChainMap::identity(&c)).unwrap()),
            ("cone(0)", cone(&ChainMap::zero(&c, &d, 0)).unwrap()),
        ];
        let s2 = sym2(&c);
        let w2 = wedge2(&c);
        let t = tensor(&c, &c).unwrap();
        built.push(("cone(π)", cone(&s2.projection).unwrap()));
        built.push(("sym2", s2.complex.clone()));
        built.push(("wedge2", w2.complex.clone()));
        for (name, x) in &built {
            if !squares_to_zero(x) {
                return Err(format!("d² ≠ 0 for {name} on complex #{k}"));
            }
        }
        for m in -8..=4 {
            if s2.complex.dim(m) + w2.complex.dim(m) != t.dim(m) {
                return Err(format!("Sym² + Λ² ≠ ⊗² in degree {m} on complex #{k}"));
            }
            if sym2(&shift(&c, 1)).complex.dim(m) != w2.complex.dim(m + 2) {
                return Err(format!("décalage dimension identity fails in degree {m} on complex #{k}"));
            }
        }
    }
    Ok("200 complexes, 9 constructions each".into())
}

fn c2_nondegeneracy_routes() -> Result<String, String> {
    let mut r = rng(2);
    let mut nondeg = 0;
    for k in 0..100 {
        let c = random_complex(&mut r, Q, -2, 1, 2);
        let (n, m) = (r.gen_range(-1..=1), r.gen_range(-1..=1));
        let q = if k % 2 == 0 {
            let h = hyperbolic(&c, n, m).unwrap();
            let noise = random_form(&mut r, h.carrier(), n + m).unwrap();
            h.add(&noise).unwrap()
        } else {
            random_form(&mut r, &c, n + m).unwrap()
        };
        let a = q.is_nondegenerate();
        if a != q.is_nondegenerate_by_cohomology() {
            return Err(format!("routes disagree on form #{k}"));
        }
        nondeg += a as usize;
    }
    Ok(format!("100 forms, {nondeg} nondegenerate"))
}

fn c3_hyperbolic() -> Result<String, String> {
    let mut r = rng(3);
    let mut count = 0;
    let degs = [-2, -1, 0, 1];
    for code in 0..5usize.pow(4) {
        let dims: Vec<(i32, usize)> = (0..4).map(|j| (degs[j], code / 5usize.pow(j as u32) % 5)).collect();
        if dims.iter().map(|d| d.1).sum::<usize>() > 4 {
            continue;
        }
        let mut carriers = vec![Complex::from_dims(Q, &dims, vec![]).unwrap()];
        for _ in 0..2 {
            let mut diffs = Vec::new();
            let mut prev: Option<Matrix> = None;
            for j in 0..3 {
                let (a, b) = (dims[j].1, dims[j + 1].1);
                let m = qflab::random::random_matrix(&mut r, Q, b, a, 1);
                let m = match &prev {
                    Some(p) if !m.mul(p).is_zero() => Matrix::zeros(Q, b, a),
                    _ => m,
                };
                prev = Some(m.clone());
                diffs.push((degs[j], m));
            }
            carriers.push(Complex::from_dims(Q, &dims, diffs).unwrap());
        }
        for c in &carriers {
            for n in -1..=1 {
                for m in -1..=1 {
                    let h = hyperbolic(c, n, m).map_err(|e| e.to_string())?;
                    if !h.is_nondegenerate() {
                        return Err(format!("hyp(C; {n}, {m}) degenerate for dims {dims:?}"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} hyperbolic forms"))
}

fn c4_lagrangians() -> Result<String, String> {
    let plane = hyperbolic(&Complex::concentrated(Q, 0, 1), 0, 0).unwrap();
    let iso = line(&[&[1], &[0]], plane.carrier());
    let zero_gamma = HomotopyWitness::zero(iso.source(), 0);
    if !is_lagrangian(&iso, &plane, &zero_gamma).map_err(|e| e.to_string())? {
        return Err("isotropic line in the hyperbolic plane is not lagrangian".into());
    }
    let four = hyperbolic(&Complex::concentrated(Q, 0, 2), 0, 0).unwrap();
    let thin = line(&[&[1], &[0], &[0], &[0]], four.carrier());
    if is_lagrangian(&thin, &four, &zero_gamma).map_err(|e| e.to_string())? {
        return Err("non-coisotropic line reported lagrangian".into());
    }
    let skew = line(&[&[1], &[1]], plane.carrier());
    if is_lagrangian(&skew, &plane, &zero_gamma).is_ok() {
        return Err("non-isotropic line accepted".into());
    }
    let q = gram(&[&[1, 0], &[0, 1]]);
    let vv = orthogonal_sum(&q, &q.neg()).unwrap();
    let diag = ChainMap::new(
        q.carrier().clone(),
        vv.carrier().clone(),
        0,
        BTreeMap::from([(0, Matrix::from_i64(Q, &[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]))]),
    )
    .unwrap();
    let g = HomotopyWitness::zero(q.carrier(), 0);
    if !is_lagrangian(&diag, &vv, &g).map_err(|e| e.to_string())? {
        return Err("diagonal is not lagrangian".into());
    }
    Ok("isotropic: yes; non-coisotropic: no; non-isotropic: rejected; diagonal: yes".into())
}

fn c5_fiber_products() -> Result<String, String> {
    let plane = hyperbolic(&Complex::concentrated(Q, 0, 1), 0, 0).unwrap();
    let v = line(&[&[1], &[0]], plane.carrier());
    let w = line(&[&[0], &[1]], plane.carrier());
    let g0 = HomotopyWitness::zero(v.source(), 0);
    let q = gram(&[&[1, 0], &[0, 1]]);
    let vv = orthogonal_sum(&q, &q.neg()).unwrap();
    let mk = |rows: &[&[i64]]| {
        ChainMap::new(q.carrier().clone(), vv.carrier().clone(), 0, BTreeMap::from([(0, Matrix::from_i64(Q, rows))]))
            .unwrap()
    };
    let diag = mk(&[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]);
    let anti = mk(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
    let gq = HomotopyWitness::zero(q.carrier(), 0);
    let cases = [
        ("L×L in hyp", fiber_product_form(&plane, &v, &g0, &v, &g0)),
        ("L×L′ in hyp", fiber_product_form(&plane, &v, &g0, &w, &g0)),
        ("Δ×Δ", fiber_product_form(&vv, &diag, &gq, &diag, &gq)),
        ("Δ×anti-Δ", fiber_product_form(&vv, &diag, &gq, &anti, &gq)),
    ];
    for (name, z) in cases {
        let z = z.map_err(|e| format!("{name}: {e}"))?;
        if z.shift() != -1 || !z.is_nondegenerate() {
            return Err(format!("{name}: shift {} nondegenerate {}", z.shift(), z.is_nondegenerate()));
        }
    }
    Ok("4 fiber products, shift −1, nondegenerate".into())
}

fn c6_transgression() -> Result<String, String> {
    let sphere = OrientedAlgebra::sphere(Q, 2).unwrap();
    let circle = OrientedAlgebra::circle(Q);
    let forms = [
        hyperbolic(&Complex::concentrated(Q, 0, 1), 0, 0).unwrap(),
        gram(&[&[1, 0], &[0, -1]]),
        gram(&[&[2, 1], &[1, 3]]),
        hyperbolic(&Complex::two_term(Q, -1, Matrix::from_i64(Q, &[&[1]])).unwrap(), 0, 0).unwrap(),
        hyperbolic(&Complex::concentrated(Q, -1, 1), -1, 1).unwrap(),
    ];
    for (k, q) in forms.iter().enumerate() {
        let t = transgress(q, &sphere).map_err(|e| e.to_string())?;
        if t.shift() != q.shift() - 2 || !t.is_nondegenerate() {
            return Err(format!("sphere transgression of form #{k}"));
        }
        let l = transgress(q, &circle).map_err(|e| e.to_string())?;
        if l.shift() != q.shift() - 1 || !l.is_nondegenerate() {
            return Err(format!("circle transgression of form #{k}"));
        }
    }
    Ok(format!("{} forms, S² shift −2, S¹ shift −1", forms.len()))
}

fn c7_toen() -> Result<String, String> {
    let c = Complex::concentrated(Q, 0, 1);
    let cl = derived_clifford(&QuadraticForm::zero(&c, 0)).map_err(|e| e.to_string())?;
    let p = cl.presentation();
    let tr = Truncation::new(p, 6, -1, 0, CAP).map_err(|e| e.to_string())?;
    let h0 = tr.cohomology_at(0).dim();
    if h0 != 2 {
        return Err(format!("dim H⁰ = {h0}"));
    }
    let piece = Truncation::weight_piece(p, 3, -1, -1, CAP).map_err(|e| e.to_string())?;
    let h1 = piece.cohomology_at(-1).dim();
    let cyc = p.parse_poly("x*y - y*x").unwrap();
    if h1 < 1 || !piece.is_nonzero_class(&cyc).map_err(|e| e.to_string())? {
        return Err(format!("weight-3 H⁻¹ has dim {h1} and misses [xy − yx]"));
    }
    // same verdict after rescaling to d(y) = x²
    let toen = toen_presentation(Q);
    let resc = cl.toen_rescaling().map_err(|e| e.to_string())?;
    let pushed = push_class(&resc, &cyc, 6, CAP).map_err(|e| e.to_string())?;
    if resc.target() != &toen || !pushed.nonzero || !pushed.definitive {
        return Err("rescaled class vanishes".into());
    }
    Ok(format!("dim H⁰ = 2, dim H⁻¹_(3) = {h1}, [xy − yx] ≠ 0"))
}

fn c8_rank_two_zero() -> Result<String, String> {
    let c = Complex::concentrated(Q, 0, 2);
    let cert = h_minus_one_certificate(&QuadraticForm::zero(&c, 0), 6, CAP)
        .map_err(|e| e.to_string())?
        .ok_or("no certificate")?;
    if cert.cycle_text() != "y_1_2 - y_2_1" || !cert.per_weight || !cert.pushed.nonzero || !cert.pushed.definitive {
        return Err(format!("certificate rejected: {}", cert.cycle_text()));
    }
    Ok("[y₁₂ − y₂₁] ≠ 0 per weight and under detection".into())
}

fn c9_comparison() -> Result<String, String> {
    let vals = [-1i64, 0, 1, 2];
    let mut count = 0;
    for r in 0..=3usize {
        for code in 0..4usize.pow(r as u32) {
            let entries = (0..r).map(|i| (i, i, Q.int(vals[code / 4usize.pow(i as u32) % 4])));
            let q = QuadraticForm::gram(Q, Matrix::assemble(Q, r, r, entries)).unwrap();
            let h = h0_derived(&q, 6, CAP).map_err(|e| e.to_string())?;
            if h.dim != 1 << r || h.classical_dim() != 1 << r || h.structure != Some(true) {
                return Err(format!("rank {r} code {code}: dim {} structure {:?}", h.dim, h.structure));
            }
            count += 1;
        }
    }
    Ok(format!("{count} diagonal forms, dim 2^r, structure constants match"))
}

fn c10_sum_iso() -> Result<String, String> {
    let cases = [
        (gram(&[&[1]]), gram(&[&[1]])),
        (gram(&[&[0]]), gram(&[&[2]])),
        (gram(&[&[1]]), gram(&[&[1, 0], &[0, -1]])),
        (gram(&[&[2]]), gram(&[&[0, 1], &[1, 0]])),
    ];
    for (k, (a, b)) in cases.iter().enumerate() {
        let iso = clifford_sum_iso(a, b).map_err(|e| e.to_string())?;
        let r = a.carrier().total_dim() + b.carrier().total_dim();
        let h = iso.h0(2 * r as i32, CAP).map_err(|e| e.to_string())?;
        if !h.is_iso() {
            return Err(format!("case #{k}: {h:?}"));
        }
    }
    Ok("splits (1,1) and (1,2), morphisms valid, H⁰ iso".into())
}

fn c11_hyperbolic_action() -> Result<String, String> {
    for r in 1..=2 {
        let a = hyperbolic_action(Q, r).map_err(|e| e.to_string())?;
        if !a.is_bijective() || a.structure_rank != 1 << (2 * r) {
            return Err(format!("r = {r}: rank {}", a.structure_rank));
        }
    }
    Ok("ranks 4 and 16".into())
}

fn c12_gw_additivity() -> Result<String, String> {
    let mut r = rng(12);
    let vals = [-3i64, -2, -1, 1, 2, 3, 5, 6, 7];
    for k in 0..50 {
        let (n1, n2) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let a = random_diagonal(&mut r, Q, n1, &vals);
        let b = random_diagonal(&mut r, Q, n2, &vals);
        let (ia, ib) = (gw_invariants(&a).unwrap(), gw_invariants(&b).unwrap());
        let is = gw_invariants(&orthogonal_sum(&a, &b).unwrap()).unwrap();
        let prod = Scalar::from_bigint(&ia.discriminant * &ib.discriminant);
        if is.rank != ia.rank + ib.rank || is.signature != ia.signature + ib.signature || is.discriminant != square_class(&prod)
        {
            return Err(format!("pair #{k}: {ia:?} ⊥ {ib:?} gave {is:?}"));
        }
    }
    Ok("50 pairs".into())
}

type Check = fn() -> Result<String, String>;

fn main() {
    let checks: [(u32, &str, Check, u64); 12] = [
        (1, "sign coherence", c1_sign_coherence, 10),
        (2, "nondegeneracy routes agree", c2_nondegeneracy_routes, 10),
        (3, "hyperbolic forms nondegenerate", c3_hyperbolic, 10),
        (4, "lagrangian recovery", c4_lagrangians, 5),
        (5, "fiber product form", c5_fiber_products, 5),
        (6, "transgression shifts", c6_transgression, 5),
        (7, "rank-one zero form", c7_toen, 30),
        (8, "rank-two H⁻¹ class", c8_rank_two_zero, 60),
        (9, "H⁰ comparison", c9_comparison, 300),
        (10, "orthogonal sum iso", c10_sum_iso, 120),
        (11, "hyperbolic action", c11_hyperbolic_action, 5),
        (12, "GW additivity", c12_gw_additivity, 5),
    ];
    let mut failed = 0;
    for (n, name, f, limit) in checks {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let in_time = took < Duration::from_secs(limit);
        let (tag, detail) = match (&res, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] {n:>2} {name}: {detail} ({:.2} s / {limit} s)", took.as_secs_f64());
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
