//! Inner derivations [δ, δ_d'] induce the zero map on homology, while an
//! outer derivation need not.

use lqt_core::coalgebra::{Cochain, Flavor, Vector, WeightCap};
use lqt_core::fixtures;
use lqt_core::linfty::{check_derivation, induced_map, inner_action_on_homology, lie_homology_full};
use lqt_core::Scalar;

fn main() {
    let gl2 = fixtures::linfty("gl2");
    let space = gl2.space().clone();
    let cap = WeightCap::new(5, 3).unwrap();

    // d' = ι_x for x = 2 e12 - e21: its inner derivation is ad x
    let mut d = Cochain::new(space.clone(), Flavor::Symmetric, 1);
    d.add(&[], &[(1, Scalar::from_int(2)), (2, -Scalar::one())].into_iter().collect()).unwrap();
    let m = inner_action_on_homology(&gl2, &d, &cap).unwrap();
    println!("ad(2 e12 - e21) on H(gl2): zero = {}", m.is_zero());

    // x ↦ Tr(x)·(e11 + e22) is a derivation that is not inner
    let centre: Vector = [(0, Scalar::one()), (3, Scalar::one())].into_iter().collect();
    let mut t = Cochain::new(space, Flavor::Symmetric, 0);
    t.add(&[0], &centre).unwrap();
    t.add(&[3], &centre).unwrap();
    let der = check_derivation(&gl2, &t, &WeightCap::new(5, 4).unwrap()).unwrap();
    let lqt_core::linfty::DerivationOutcome::Derivation(der) = der else {
        panic!("trace derivation rejected")
    };
    let h = lie_homology_full(&gl2, &cap, None).unwrap();
    let m = induced_map(&h, &der).unwrap();
    println!("trace derivation on H(gl2): zero = {}", m.is_zero());
}
