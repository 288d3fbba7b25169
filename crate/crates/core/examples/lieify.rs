//! Lie-ification: ℓ_k is the graded symmetrization of m_k.

use lqt_core::coalgebra::WeightCap;
use lqt_core::constructions::{lie_ify, lie_ify_via_coalgebra, matrix_algebra, tensor_with_associative, matrix_units};
use lqt_core::document::from_linfty;
use lqt_core::fixtures;
use lqt_core::linfty::check_linfty;

fn main() {
    let m = matrix_algebra(&fixtures::ainfty("dual"), 2).unwrap();
    let l = lie_ify(&m.algebra);
    let slow = lie_ify_via_coalgebra(&m.algebra, 2, 4);
    println!("gl2(K[eps]): {} brackets, coalgebra route agrees: {}", l.ell().canonical_table().len(), l.ell() == slow.ell());
    println!("{:?}", check_linfty(&l, &WeightCap::new(3, 6).unwrap()));

    // a genuinely higher structure: m3 ⊗ M2(K) has ℓ3 ≠ 0
    let m3 = tensor_with_associative(&fixtures::ainfty("m3"), &matrix_units(2).unwrap()).unwrap();
    let l3 = lie_ify(&m3);
    println!("arities of ℓ for m3 ⊗ M2(K): {:?}", l3.ell().arities().collect::<Vec<_>>());
    print!("{}", from_linfty(&lie_ify(&fixtures::ainfty("upper"))).to_json());
}
