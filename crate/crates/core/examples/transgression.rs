//! Mapping forms along oriented algebras: point, circle, spheres.

use qflab::linalg::{Field, Matrix};
use qflab::quadratic::{transgress, OrientedAlgebra, QuadraticForm};

fn main() {
    let q = Field::Rational;
    let form = QuadraticForm::gram(q, Matrix::from_i64(q, &[&[1, 1], &[1, 3]])).unwrap();
    let algebras = [
        ("point", OrientedAlgebra::point(q)),
        ("circle", OrientedAlgebra::circle(q)),
        ("S^2", OrientedAlgebra::sphere(q, 2).unwrap()),
        ("S^3", OrientedAlgebra::sphere(q, 3).unwrap()),
    ];
    for (name, b) in &algebras {
        let t = transgress(&form, b).unwrap();
        println!(
            "{name:>6}: shift {:>2}, carrier {:?}, nondegenerate {}",
            t.shift(),
            t.carrier().basis(),
            t.is_nondegenerate()
        );
    }
}
