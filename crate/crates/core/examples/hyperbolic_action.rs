//! Cl(hyp(kʳ)) acting on the exterior algebra Λkʳ.

use qflab::clifford::hyperbolic_action;
use qflab::Field;

fn main() {
    for r in 1..=3 {
        let a = hyperbolic_action(Field::Rational, r).unwrap();
        println!(
            "r = {r}: dim Cl = {}, relations hold {}, rank of Cl → End(Λ) = {}, bijective {}",
            a.clifford.dim(),
            a.relations_hold,
            a.structure_rank,
            a.is_bijective()
        );
    }
    let a = hyperbolic_action(Field::Rational, 1).unwrap();
    for (k, g) in a.generators.iter().enumerate() {
        println!("ρ(e{}) = {:?}", k + 1, g.to_dense());
    }
}
