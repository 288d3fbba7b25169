//! Exact rank, kernel and subspace membership over the rationals.

use lqt_core::linalg::{kernel_basis, rank, SparseMatrix, SparseVector, Subspace};
use lqt_core::Scalar;

fn main() {
    // a rank-2 matrix whose rows are dependent over Q but not over floats
    // that round 1/3 differently
    let m = SparseMatrix::from_dense(&[vec![3, 1, 4], vec![1, 5, 9], vec![5, 11, 22]]);
    println!("rank = {}", rank(&m));
    let ker = kernel_basis(&m);
    for v in ker.basis() {
        println!("kernel vector {:?}", v.entries());
        assert!(m.mul_vec(v).is_zero());
    }

    let third = Scalar::from_ratio(1, 3);
    let s = Subspace::span(3, [SparseVector::from_pairs([(0, third.clone()), (1, Scalar::one())])]);
    let probe = SparseVector::from_pairs([(0, Scalar::one()), (1, Scalar::from_int(3))]);
    println!("(1, 3, 0) in span{{(1/3, 1, 0)}}: {}", s.contains(&probe));
}
