//! Row reduction, rank, kernels and solving over Q and F_p.

use qflab::linalg::{kernel_basis, rank, rref, solve, Field, Matrix};

fn main() {
    let q = Field::Rational;
    let m = Matrix::from_i64(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    let (r, pivots) = rref(&m);
    println!("rref = {:?}\npivots = {pivots:?}", r.to_dense());
    println!("rank = {}", rank(&m));
    let k = kernel_basis(&m);
    println!("kernel ({} vectors): {:?}", k.ncols(), k.to_dense());
    println!("solve m x = (6, 12, 2): {:?}", solve(&m, &[q.int(6), q.int(12), q.int(2)]));

    let f5 = Field::prime(5).unwrap();
    let a = Matrix::from_i64(f5, &[&[1, 2], &[3, 1]]);
    println!("over {f5}: rank [[1,2],[3,1]] = {} (over Q it is 2)", rank(&a));
}
