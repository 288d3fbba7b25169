//! Cyclic homology of A∞-algebras from the quotient of the tensor complex by
//! the signed cyclic action.

use lqt_core::ainfty::{cyclic_homology, cyclic_lambda};
use lqt_core::coalgebra::WeightCap;
use lqt_core::fixtures;

fn main() {
    let a = fixtures::ainfty("dual");
    let (w, sign) = cyclic_lambda(a.space(), &[0, 1, 1]);
    println!("λ(1, eps, eps) = {sign} {w:?}");

    let cap = WeightCap::new(6, 4).unwrap();
    for name in ["K", "dual", "upper", "dga", "m3"] {
        let t = cyclic_homology(&fixtures::ainfty(name), &cap).unwrap();
        println!("HC({name}) = {:?}  exact {:?}", t.dims, t.exact);
    }
}
