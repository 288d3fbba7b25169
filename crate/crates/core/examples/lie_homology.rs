//! Chevalley–Eilenberg homology, coinvariants, the coproduct on homology and
//! its primitives.

use lqt_core::coalgebra::{Vector, WeightCap};
use lqt_core::fixtures;
use lqt_core::linfty::{lie_homology, lie_homology_full, Coinvariants};
use lqt_core::Scalar;

fn main() {
    let cap = WeightCap::new(5, 3).unwrap();
    let sl2 = fixtures::linfty("sl2");
    let h = lie_homology_full(&sl2, &cap, None).unwrap();
    println!("H(sl2) = {:?}, primitives {:?}", h.table.dims, h.primitive_dims());
    println!("reduced coproduct of the degree-3 class: {:?}", h.reduced_coproduct(3, 0));

    // coinvariants under all of sl2: a much smaller complex, same homology
    let all = (0..3).map(|i| Vector::single(i, Scalar::one())).collect();
    let coinv = Coinvariants::subalgebra(&sl2, all).unwrap();
    println!("H(sl2)_sl2 = {:?}", lie_homology(&sl2, &cap, Some(&coinv)).unwrap().dims);

    let gl2 = fixtures::linfty("gl2");
    let h = lie_homology_full(&gl2, &WeightCap::new(6, 4).unwrap(), None).unwrap();
    println!("H(gl2) = {:?}, primitives {:?}", h.table.dims, h.primitive_dims());
}
