//! gl_n(A), the interleaved block sum, the trace and the commutator subspace.

use lqt_core::coalgebra::{Vector, WeightCap};
use lqt_core::constructions::{block_plus, gl, in_commutator_subspace, is_strict_morphism, trace};
use lqt_core::fixtures;
use lqt_core::Scalar;

fn main() {
    let a = fixtures::ainfty("dual");
    let g = gl(&a, 2).unwrap();
    let m = &g.matrices;
    println!("gl2(K[eps]) has dimension {}", g.lie.space().dim());

    // x = E12 ⊗ eps + E11, y = E21
    let x: Vector = [(m.letter(1, 0, 1), Scalar::one()), (m.letter(0, 0, 0), Scalar::one())].into_iter().collect();
    let y = Vector::single(m.letter(0, 1, 0), Scalar::one());
    let (z, size) = block_plus(&x, 2, &y, 2, m.dim_base());
    println!("x ⊕ y lives in gl_{size}: {z:?}");
    println!("Tr(x ⊕ y) = {:?} = Tr x + Tr y = {:?} + {:?}", trace(&z, size, 2), trace(&x, 2, 2), trace(&y, 2, 2));

    let t = in_commutator_subspace(&Vector::single(m.letter(1, 0, 1), Scalar::one()), 2, 2);
    println!("E12 ⊗ eps in [M2(K), M2(A)]: trace test {}, solve {}", t.by_trace, t.by_solve);

    let g4 = gl(&a, 4).unwrap();
    let corner = g.corner_letters(4);
    println!("corner gl2 → gl4 strict: {}", is_strict_morphism(&corner, &g.lie, &g4.lie, &WeightCap::new(3, 3).unwrap()));
}
