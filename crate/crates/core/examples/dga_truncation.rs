//! Weight truncations of a semi-free dga and their cohomology.

use qflab::complexes::induced_map;
use qflab::dga::{parse_presentation, Truncation};
use qflab::linalg::rank;

fn main() {
    let p = parse_presentation("gen x deg 0 wt 1; gen y deg -1 wt 2; d y = x*x;", None).unwrap();
    print!("{p}");
    let mut prev: Option<Truncation> = None;
    for w in 0..=6 {
        let t = Truncation::new(&p, w, -1, 0, 20000).unwrap();
        let h0 = t.cohomology_at(0);
        let h1 = t.cohomology_at(-1);
        let persist = prev.as_ref().map(|s| {
            let inc = s.inclusion_into(&t).unwrap();
            rank(&induced_map(&inc, &s.cohomology_at(-1), &h1))
        });
        println!(
            "w ≤ {w}: dims ({}, {}), H⁰ {}, H⁻¹ {}, H⁻¹ surviving from w−1: {:?}",
            t.dim(-1),
            t.dim(0),
            h0.dim(),
            h1.dim(),
            persist
        );
        prev = Some(t);
    }
    for piece in Truncation::new(&p, 6, -1, 0, 20000).unwrap().cohomology_by_weight(20000).unwrap() {
        println!("{piece:?}");
    }
}
