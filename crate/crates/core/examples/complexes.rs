//! Shifts, duals, tensor squares and cones of cochain complexes.

use qflab::complexes::{cohomology_dims, cone, dual, shift, sym2, tensor, wedge2, ChainMap, Complex};
use qflab::linalg::{Field, Matrix};

fn main() {
    let q = Field::Rational;
    // a → b in degrees −1, 0 plus a free class c in degree 0
    let c = Complex::from_dims(q, &[(-1, 1), (0, 2)], vec![(-1, Matrix::from_i64(q, &[&[1], &[0]]))]).unwrap();
    println!("C: dims {:?}, H = {:?}", c.basis(), cohomology_dims(&c));
    println!("C[1]: d_-2 = {:?}", shift(&c, 1).differential(-2).to_dense());
    println!("C^∨: H = {:?}", cohomology_dims(&dual(&c)));
    let t = tensor(&c, &c).unwrap();
    let (s2, w2) = (sym2(&c).complex, wedge2(&c).complex);
    for m in -2..=0 {
        println!("degree {m}: ⊗² {} = Sym² {} + Λ² {}", t.dim(m), s2.dim(m), w2.dim(m));
    }
    println!("H(Sym² C) = {:?}", cohomology_dims(&s2));
    let id_cone = cone(&ChainMap::identity(&c)).unwrap();
    println!("cone(id) acyclic: {}", cohomology_dims(&id_cone).values().all(|&d| d == 0));
}
